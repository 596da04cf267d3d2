// Exhaustive reference for the day subproblem. Deliberately shares nothing
// with the enumerating solver: mark matrices are generated raw and filtered by
// the model inequalities, patients are assigned session by session over every
// integer vector, and auxiliary overlap variables take their smallest feasible
// values (they carry positive cost, so any minimizer does the same).

#include "dialcap/error.hpp"
#include "dialcap/schedule_solver.hpp"

#include <algorithm>
#include <limits>

namespace dialcap {

namespace {

struct Instance {
    CohortPolicy policy;
    int S;
    int units;
    std::array<int, 3> cap{};
    std::array<int, 4> H{};
    PenaltyWeights w;
    int big_m;
};

struct Search {
    const Instance& in;
    // marks[j][s], phase[k] = Y for k = 0 (dummy session) .. S
    std::array<std::array<int, 4>, 3> N{};
    std::array<int, 5> Y{};
    int marks = 0;

    std::array<std::array<int, 4>, 4> X{}; // [type][session]
    std::array<int, 4> served{};
    double best = std::numeric_limits<double>::infinity();
    ScheduleCost best_cost;
    OverlapTally tally;

    explicit Search(const Instance& i) : in(i) {}

    bool standard_ok() const {
        for (int s = 0; s + 1 < in.S; ++s)
            if (N[0][s] < N[0][s + 1]) return false;
        return true;
    }

    // sum_{s' >= s+2} N[j][s'] <= |S| (1 - N[j][s] + N[j][s+1]) for every s
    // with s+2 inside the day.
    bool consecutive_ok(int j) const {
        for (int s = 0; s + 2 < in.S; ++s) {
            int later = 0;
            for (int t = s + 2; t < in.S; ++t) later += N[j][t];
            if (later > in.S * (1 - N[j][s] + N[j][s + 1])) return false;
        }
        return true;
    }

    // Isolated session s is in the suspected phase iff Y of the preceding
    // session (dummy for s = 0) is 1.
    bool suspected_phase(int s) const { return Y[s] == 1; }

    double unserved_lower_bound(int from) const {
        double lb = 0.0;
        auto rest_cap = [&](int unit) {
            int n = 0;
            for (int s = from; s < in.S; ++s) n += N[unit][s];
            return n * in.cap[unit];
        };
        const double pi12 = std::min(in.w.pi[0], in.w.pi[1]);
        lb += pi12 * std::max(0, in.H[0] + in.H[1] - served[0] - served[1] - rest_cap(0));
        if (in.policy == CohortPolicy::ThreeUnit) {
            lb += in.w.pi[2] * std::max(0, in.H[2] - served[2] - rest_cap(1));
            lb += in.w.pi[3] * std::max(0, in.H[3] - served[3] - rest_cap(2));
        } else {
            lb += std::min(in.w.pi[2], in.w.pi[3]) *
                  std::max(0, in.H[2] + in.H[3] - served[2] - served[3] - rest_cap(1));
        }
        return lb;
    }

    void leaf(double partial) {
        std::array<int, 4> F{};
        double unserved = 0.0;
        for (int i = 0; i < 4; ++i) {
            F[i] = in.H[i] - served[i];
            unserved += in.w.pi[i] * F[i];
        }
        if (in.policy == CohortPolicy::TwoUnit) {
            // H4 - sum_{s' <= k} X4 - F4 <= M * Y_k for k over the dummy and real sessions.
            int done = 0;
            for (int k = 0; k <= in.S; ++k) {
                if (k > 0) done += X[3][k - 1];
                if (in.H[3] - done - F[3] > in.big_m * Y[k]) return;
            }
        }
        const double total = partial + unserved;
        if (total < best) {
            best = total;
            best_cost = ScheduleCost::compose(tally, unserved, marks, in.w);
        }
    }

    void session(int s, double partial) {
        if (partial + unserved_lower_bound(s) >= best) return;
        if (s == in.S) {
            leaf(partial);
            return;
        }
        const bool two = in.policy == CohortPolicy::TwoUnit;
        const int cap12 = N[0][s] ? in.cap[0] : 0;
        const int cap3 = N[1][s] ? in.cap[1] : 0;
        const int cap4 = two ? cap3 : (N[2][s] ? in.cap[2] : 0);
        const int max3 = two && Y[s] == 1 ? 0 : cap3; // infected only once the suspected phase is over

        for (int x1 = std::min(cap12, in.H[0] - served[0]); x1 >= 0; --x1)
            for (int x2 = std::min(cap12 - x1, in.H[1] - served[1]); x2 >= 0; --x2)
                for (int x3 = std::min(max3, in.H[2] - served[2]); x3 >= 0; --x3)
                    for (int x4 = std::min(two ? cap4 - x3 : cap4, in.H[3] - served[3]); x4 >= 0; --x4) {
                        int u = 0, d = 0, v = 0;
                        if (two) {
                            const int both = N[0][s] + N[1][s] - 1 > 0 ? 1 : 0;
                            d = suspected_phase(s) ? both : 0;
                            u = suspected_phase(s) ? 0 : both;
                        } else {
                            u = std::max(0, N[0][s] + N[1][s] - 1);
                            d = std::max(0, N[0][s] + N[2][s] - 1);
                            v = std::max(0, N[1][s] + N[2][s] - 1);
                        }
                        const int q = u * (x1 + x2 + x3);
                        const int g = d * (x1 + x2 + x4);
                        const int w = v * (x3 + x4);
                        X[0][s] = x1, X[1][s] = x2, X[2][s] = x3, X[3][s] = x4;
                        served[0] += x1, served[1] += x2, served[2] += x3, served[3] += x4;
                        tally.q += q, tally.g += g, tally.w += w;
                        session(s + 1, partial + in.w.alpha1 * q + in.w.alpha2 * g + in.w.alpha3 * w);
                        tally.q -= q, tally.g -= g, tally.w -= w;
                        served[0] -= x1, served[1] -= x2, served[2] -= x3, served[3] -= x4;
                        X[0][s] = X[1][s] = X[2][s] = X[3][s] = 0;
                    }
    }
};

} // namespace

ScheduleCost brute_force_day(CohortPolicy policy, const Allocation& alloc, const DayDemand& demand,
                             const PenaltyWeights& weights, const ClinicConfig& config) {
    config.validate(policy);
    weights.validate();
    if (demand.total() > 12 || config.total_machines > 4 || config.sessions_per_day > 4)
        throw ValidationError("instance too large for exhaustive search");
    if (alloc.units() != unit_count(policy) || alloc.total() > config.total_machines)
        throw ValidationError("allocation does not fit the instance");
    for (int j = 0; j < alloc.units(); ++j)
        if (alloc[j] > config.unit_caps[static_cast<std::size_t>(j)])
            throw ValidationError("allocation exceeds unit caps");

    Instance in{policy, config.sessions_per_day, unit_count(policy), {}, demand.counts, weights, 0};
    for (int j = 0; j < in.units; ++j) in.cap[static_cast<std::size_t>(j)] = alloc[j];
    in.big_m = std::max(1, demand.total());

    Search search(in);
    const int bits = in.units * in.S;
    const int phase_patterns = policy == CohortPolicy::TwoUnit ? 1 << (in.S + 1) : 1;
    for (int mask = 0; mask < (1 << bits); ++mask) {
        search.marks = 0;
        for (int j = 0; j < in.units; ++j)
            for (int s = 0; s < in.S; ++s) {
                search.N[j][s] = (mask >> (j * in.S + s)) & 1;
                search.marks += search.N[j][s];
            }
        if (!search.standard_ok()) continue;
        bool ok = true;
        for (int j = 1; j < in.units; ++j) ok = ok && search.consecutive_ok(j);
        if (!ok) continue;
        for (int y = 0; y < phase_patterns; ++y) {
            for (int k = 0; k <= in.S; ++k) search.Y[k] = policy == CohortPolicy::TwoUnit ? (y >> k) & 1 : 0;
            search.session(0, weights.epsilon * search.marks);
        }
    }
    return search.best_cost;
}

} // namespace dialcap
