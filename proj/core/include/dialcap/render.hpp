#pragma once

#include "dialcap/domain.hpp"
#include "dialcap/schedule_solver.hpp"

#include <span>
#include <string>
#include <vector>

namespace dialcap {

// Sessions containing at least one patient counted in Q, G or W.
std::vector<bool> overlap_sessions(const DaySchedule& schedule, CohortPolicy policy);

// Fixed-width grid: one row per session, one column per machine grouped by
// unit. Cells hold the patient type code; '.' is an idle machine in a marked
// session, blank a closed one. Rows with cross-cohort overlap carry a '*'.
// The footer gives the daily penalty and its parts.
std::string render_day(const DaySchedule& schedule, const Allocation& alloc, CohortPolicy policy,
                       const ClinicConfig& config, const PenaltyWeights& weights = {});

// Days labelled Mon.. in order.
std::string render_week(std::span<const DayResult> days, const Allocation& alloc, CohortPolicy policy,
                        const ClinicConfig& config, const PenaltyWeights& weights = {});

// day,session,unit,machine_slot,patient_type (1-based); every machine of a
// marked session, patient_type empty when idle.
std::string schedule_cells_csv(std::span<const DayResult> days, const Allocation& alloc, CohortPolicy policy);

} // namespace dialcap
