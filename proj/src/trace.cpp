#include "pcycle/trace.hpp"

namespace pcycle {

std::string_view to_string(EventKind kind) noexcept {
    switch (kind) {
        case EventKind::TrialPath: return "trial_path";
        case EventKind::CandidateValued: return "candidate";
        case EventKind::CycleApplied: return "cycle_applied";
        case EventKind::Exhausted: return "exhausted";
        case EventKind::PassCompleted: return "pass";
        case EventKind::CycleFound: return "cycle_found";
        case EventKind::BoundedCycles: return "bounded_cycles";
        case EventKind::PatchAttempt: return "patch_attempt";
    }
    return "unknown";
}

}  // namespace pcycle
