#pragma once

#include "dialcap/domain.hpp"

#include <memory>
#include <vector>

namespace dialcap {

struct DayResult {
    DaySchedule schedule;
    ScheduleCost cost;
};

// Overlap tallies of one day: for ThreeUnit, standard+isolated co-marked
// sessions add their standard and infected patients to q, standard+quarantine
// add standard and suspected patients to g, isolated+quarantine add infected
// and suspected patients to w. For TwoUnit, a co-marked isolated session adds
// to g in its suspected phase and to q otherwise; w stays 0.
OverlapTally count_overlaps(const DaySchedule& schedule, CohortPolicy policy);

// Full day cost recomposed from the schedule's counts.
ScheduleCost score_schedule(const DaySchedule& schedule, CohortPolicy policy, const PenaltyWeights& weights);

// Minimum-penalty schedule of one day under a fixed allocation.
//
// Every admissible mark pattern is enumerated: the standard unit runs a prefix
// of the day, every other unit one contiguous block (possibly empty), and for
// TwoUnit the isolated block is split into a suspected phase followed by an
// infected phase. Given the marks each patient's per-session cost depends only
// on which other units are co-marked, so every unit is filled independently,
// cheapest sessions first, serving a patient only while that cost is below its
// unserved penalty. Ties resolve to the lexicographically smallest
// (prefix length, block starts/ends, split) and to earlier sessions within a
// unit; unserved demand in the standard unit is charged to acute patients
// first when penalties are equal.
DayResult solve_day(CohortPolicy policy, const Allocation& alloc, const DayDemand& demand,
                    const PenaltyWeights& weights, const ClinicConfig& config);

// Memoizing day solver bound to one (policy, weights, config). Safe to share
// between threads; results do not depend on call order.
class DaySolver {
public:
    DaySolver(CohortPolicy policy, const PenaltyWeights& weights, const ClinicConfig& config, bool memoize = true);
    ~DaySolver();
    DaySolver(const DaySolver&) = delete;
    DaySolver& operator=(const DaySolver&) = delete;

    // Reference stays valid for the solver's lifetime when memoizing.
    const DayResult& solve(const Allocation& alloc, const DayDemand& demand) const;
    DayResult solve_uncached(const Allocation& alloc, const DayDemand& demand) const;

    CohortPolicy policy() const;
    const PenaltyWeights& weights() const;
    const ClinicConfig& config() const;
    std::size_t memo_size() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Verification oracle: minimum day objective found by exhaustive search over
// raw mark matrices, phase indicators and integer session assignments,
// checked against the model constraints as stated. Only for tiny instances:
// total demand <= 12, at most 4 machines and 4 sessions; otherwise throws
// ValidationError.
ScheduleCost brute_force_day(CohortPolicy policy, const Allocation& alloc, const DayDemand& demand,
                             const PenaltyWeights& weights, const ClinicConfig& config);

} // namespace dialcap
