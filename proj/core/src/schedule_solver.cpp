#include "dialcap/schedule_solver.hpp"

#include "dialcap/error.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace dialcap {

OverlapTally count_overlaps(const DaySchedule& sch, CohortPolicy policy) {
    using enum PatientType;
    OverlapTally t;
    for (int s = 0; s < sch.sessions; ++s) {
        const int standard = sch.x(Acute, s) + sch.x(Chronic, s);
        if (policy == CohortPolicy::ThreeUnit) {
            const bool m1 = sch.marked(0, s), m2 = sch.marked(1, s), m3 = sch.marked(2, s);
            if (m1 && m2) t.q += standard + sch.x(Infected, s);
            if (m1 && m3) t.g += standard + sch.x(Suspected, s);
            if (m2 && m3) t.w += sch.x(Infected, s) + sch.x(Suspected, s);
        } else if (sch.marked(0, s) && sch.marked(1, s)) {
            if (sch.suspected_phase(s))
                t.g += standard + sch.x(Suspected, s);
            else
                t.q += standard + sch.x(Infected, s);
        }
    }
    return t;
}

ScheduleCost score_schedule(const DaySchedule& sch, CohortPolicy policy, const PenaltyWeights& weights) {
    double unserved = 0.0;
    for (PatientType t : kPatientTypes) unserved += weights.unserved(t) * sch.unserved[type_index(t)];
    return ScheduleCost::compose(count_overlaps(sch, policy), unserved, sch.sessions_marked(), weights);
}

namespace {

struct Block {
    int start = -1;
    int end = -1;

    bool empty() const { return start < 0; }
    bool contains(int s) const { return start >= 0 && s >= start && s <= end; }
    int size() const { return empty() ? 0 : end - start + 1; }
};

// Empty block first, then (start, end) ascending.
std::vector<Block> all_blocks(int sessions) {
    std::vector<Block> out{Block{}};
    for (int a = 0; a < sessions; ++a)
        for (int b = a; b < sessions; ++b) out.push_back(Block{a, b});
    return out;
}

// Patients of one unit (or one phase of the isolated unit) competing for the
// same machines. Slots are marked sessions sorted by per-patient cost.
struct Group {
    int unit = 0;
    std::array<std::size_t, 2> types{}; // type indices in serving order
    int ntypes = 0;
    std::vector<std::pair<double, int>> slots;
};

struct Combo {
    int prefix = 0;
    Block isolated;
    Block quarantine;
    int split = 0; // two-unit: number of suspected-phase sessions at the block start
    int marks = 0;
    std::vector<Group> groups;
};

Group make_group(int unit, std::vector<PatientType> types, std::vector<std::pair<double, int>> slots,
                 const PenaltyWeights& w) {
    // Higher penalty served first; on equal penalty the higher type index is
    // served first so acute patients absorb unserved standard-unit demand.
    std::stable_sort(types.begin(), types.end(), [&](PatientType a, PatientType b) {
        if (w.unserved(a) != w.unserved(b)) return w.unserved(a) > w.unserved(b);
        return type_index(a) > type_index(b);
    });
    Group g;
    g.unit = unit;
    g.ntypes = static_cast<int>(types.size());
    for (std::size_t i = 0; i < types.size(); ++i) g.types[i] = type_index(types[i]);
    std::stable_sort(slots.begin(), slots.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    g.slots = std::move(slots);
    return g;
}

std::vector<Combo> build_combos(CohortPolicy policy, const PenaltyWeights& w, int S) {
    using enum PatientType;
    const auto blocks = all_blocks(S);
    std::vector<Combo> combos;
    for (int prefix = 0; prefix <= S; ++prefix) {
        auto standard = [prefix](int s) { return s < prefix; };
        for (const Block& iso : blocks) {
            if (policy == CohortPolicy::ThreeUnit) {
                for (const Block& qua : blocks) {
                    Combo c;
                    c.prefix = prefix;
                    c.isolated = iso;
                    c.quarantine = qua;
                    c.marks = prefix + iso.size() + qua.size();
                    std::vector<std::pair<double, int>> s1, s2, s3;
                    for (int s = 0; s < S; ++s) {
                        if (standard(s))
                            s1.emplace_back(w.alpha1 * iso.contains(s) + w.alpha2 * qua.contains(s), s);
                        if (iso.contains(s))
                            s2.emplace_back(w.alpha1 * standard(s) + w.alpha3 * qua.contains(s), s);
                        if (qua.contains(s))
                            s3.emplace_back(w.alpha2 * standard(s) + w.alpha3 * iso.contains(s), s);
                    }
                    c.groups.push_back(make_group(0, {Acute, Chronic}, std::move(s1), w));
                    c.groups.push_back(make_group(1, {Infected}, std::move(s2), w));
                    c.groups.push_back(make_group(2, {Suspected}, std::move(s3), w));
                    combos.push_back(std::move(c));
                }
            } else {
                for (int split = 0; split <= iso.size(); ++split) {
                    Combo c;
                    c.prefix = prefix;
                    c.isolated = iso;
                    c.split = split;
                    c.marks = prefix + iso.size();
                    auto suspected = [&](int s) { return iso.contains(s) && s < iso.start + split; };
                    auto infected = [&](int s) { return iso.contains(s) && s >= iso.start + split; };
                    std::vector<std::pair<double, int>> s1, s4, s3;
                    for (int s = 0; s < S; ++s) {
                        if (standard(s)) s1.emplace_back(w.alpha2 * suspected(s) + w.alpha1 * infected(s), s);
                        if (suspected(s)) s4.emplace_back(w.alpha2 * standard(s), s);
                        if (infected(s)) s3.emplace_back(w.alpha1 * standard(s), s);
                    }
                    c.groups.push_back(make_group(0, {Acute, Chronic}, std::move(s1), w));
                    c.groups.push_back(make_group(1, {Suspected}, std::move(s4), w));
                    c.groups.push_back(make_group(1, {Infected}, std::move(s3), w));
                    combos.push_back(std::move(c));
                }
            }
        }
    }
    return combos;
}

// Cost of filling one group greedily; writes the assignment when out != null.
double fill(const Group& g, int cap, const DayDemand& demand, const PenaltyWeights& w, DaySchedule* out) {
    std::array<int, 2> rem{};
    for (int i = 0; i < g.ntypes; ++i) rem[i] = demand.counts[g.types[i]];
    double cost = 0.0;
    int ti = 0;
    bool open = true;
    for (const auto& [c, s] : g.slots) {
        int room = cap;
        while (room > 0 && ti < g.ntypes) {
            if (rem[ti] == 0) {
                ++ti;
                continue;
            }
            if (!(c < w.pi[g.types[ti]])) {
                open = false;
                break;
            }
            const int n = std::min(room, rem[ti]);
            cost += c * n;
            rem[ti] -= n;
            room -= n;
            if (out) out->assigned[g.types[ti]][static_cast<std::size_t>(s)] += n;
        }
        if (!open || ti >= g.ntypes) break;
    }
    for (int i = 0; i < g.ntypes; ++i) {
        cost += w.pi[g.types[i]] * rem[i];
        if (out) out->unserved[g.types[i]] = rem[i];
    }
    return cost;
}

void check_allocation(CohortPolicy policy, const Allocation& alloc, const ClinicConfig& config) {
    if (alloc.units() != unit_count(policy))
        throw ValidationError("allocation " + alloc.str() + " does not match policy " + std::string(to_string(policy)));
    for (int j = 0; j < alloc.units(); ++j)
        if (alloc[j] > config.unit_caps[static_cast<std::size_t>(j)])
            throw ValidationError("allocation " + alloc.str() + " exceeds unit caps");
    if (alloc.total() > config.total_machines)
        throw ValidationError("allocation " + alloc.str() + " exceeds the machine total");
}

struct MemoKey {
    std::array<int, 3> machines{};
    std::array<int, kNumPatientTypes> demand{};
    bool operator==(const MemoKey&) const = default;
};

struct MemoHash {
    std::size_t operator()(const MemoKey& k) const noexcept {
        std::size_t h = 1469598103934665603ull;
        auto mix = [&h](int v) {
            h ^= static_cast<std::size_t>(static_cast<unsigned>(v));
            h *= 1099511628211ull;
        };
        for (int v : k.machines) mix(v);
        for (int v : k.demand) mix(v);
        return h;
    }
};

} // namespace

struct DaySolver::Impl {
    CohortPolicy policy;
    PenaltyWeights weights;
    ClinicConfig config;
    bool memoize;
    std::vector<Combo> combos;
    mutable std::shared_mutex mutex;
    mutable std::unordered_map<MemoKey, DayResult, MemoHash> memo;

    DayResult run(const Allocation& alloc, const DayDemand& demand) const {
        check_allocation(policy, alloc, config);
        for (int c : demand.counts)
            if (c < 0) throw ValidationError("day demand must be >= 0");

        double best = std::numeric_limits<double>::infinity();
        std::size_t best_idx = 0;
        for (std::size_t i = 0; i < combos.size(); ++i) {
            const Combo& c = combos[i];
            double cost = weights.epsilon * c.marks;
            if (!(cost < best)) continue;
            for (const Group& g : c.groups) {
                cost += fill(g, alloc[g.unit], demand, weights, nullptr);
                if (!(cost < best)) break;
            }
            if (cost < best) {
                best = cost;
                best_idx = i;
            }
        }

        const Combo& c = combos[best_idx];
        DayResult r;
        r.schedule = DaySchedule::empty(policy, config.sessions_per_day);
        for (int s = 0; s < config.sessions_per_day; ++s) {
            r.schedule.marks[0][static_cast<std::size_t>(s)] = s < c.prefix;
            r.schedule.marks[1][static_cast<std::size_t>(s)] = c.isolated.contains(s);
            if (policy == CohortPolicy::ThreeUnit) r.schedule.marks[2][static_cast<std::size_t>(s)] = c.quarantine.contains(s);
        }
        if (policy == CohortPolicy::TwoUnit && c.split > 0) r.schedule.type4_cutoff = c.isolated.start + c.split - 1;
        for (const Group& g : c.groups) fill(g, alloc[g.unit], demand, weights, &r.schedule);
        r.cost = score_schedule(r.schedule, policy, weights);
        return r;
    }
};

DaySolver::DaySolver(CohortPolicy policy, const PenaltyWeights& weights, const ClinicConfig& config, bool memoize)
    : impl_(std::make_unique<Impl>()) {
    config.validate(policy);
    weights.validate();
    impl_->policy = policy;
    impl_->weights = weights;
    impl_->config = config;
    impl_->memoize = memoize;
    impl_->combos = build_combos(policy, weights, config.sessions_per_day);
}

DaySolver::~DaySolver() = default;

const DayResult& DaySolver::solve(const Allocation& alloc, const DayDemand& demand) const {
    if (!impl_->memoize) throw std::logic_error("DaySolver::solve needs memoization; use solve_uncached");
    MemoKey key;
    std::copy(alloc.machines().begin(), alloc.machines().end(), key.machines.begin());
    key.demand = demand.counts;
    {
        std::shared_lock lock(impl_->mutex);
        if (auto it = impl_->memo.find(key); it != impl_->memo.end()) return it->second;
    }
    DayResult r = impl_->run(alloc, demand);
    std::unique_lock lock(impl_->mutex);
    return impl_->memo.try_emplace(key, std::move(r)).first->second;
}

DayResult DaySolver::solve_uncached(const Allocation& alloc, const DayDemand& demand) const {
    return impl_->run(alloc, demand);
}

CohortPolicy DaySolver::policy() const { return impl_->policy; }
const PenaltyWeights& DaySolver::weights() const { return impl_->weights; }
const ClinicConfig& DaySolver::config() const { return impl_->config; }

std::size_t DaySolver::memo_size() const {
    std::shared_lock lock(impl_->mutex);
    return impl_->memo.size();
}

DayResult solve_day(CohortPolicy policy, const Allocation& alloc, const DayDemand& demand,
                    const PenaltyWeights& weights, const ClinicConfig& config) {
    return DaySolver(policy, weights, config, false).solve_uncached(alloc, demand);
}

} // namespace dialcap
