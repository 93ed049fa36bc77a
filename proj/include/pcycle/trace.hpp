#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pcycle/core.hpp"

namespace pcycle {

enum class EventKind {
    TrialPath,         // phase 1: a trial path was grown (or died)
    CandidateValued,   // phase 1: a candidate permutation was valued
    CycleApplied,      // phases 1-3: the derangement changed
    Exhausted,         // phase 1: no improving candidate from enough start vertices
    PassCompleted,     // phase 2: one sweep of the negative-path algorithm
    CycleFound,        // phase 2: a negative cycle closed
    BoundedCycles,     // phase 3: cycles collected for a budget
    PatchAttempt,      // phase 3: subset search for one budget
};

std::string_view to_string(EventKind kind) noexcept;

/// One record per event. Every record carries the derangement value after it.
struct TraceEvent {
    EventKind kind{};
    int phase = 0;
    Vertex start = -1;
    int trial = 0;
    int pass = 0;
    std::vector<Vertex> path;
    std::vector<Cycle> cycles;
    Cost total = 0;
    Cost value_before = 0;
    Cost value_after = 0;
    Cost budget = 0;
    int count = 0;
    std::string note;
};

class Trace {
public:
    void record(TraceEvent event) { events_.push_back(std::move(event)); }
    const std::vector<TraceEvent>& events() const noexcept { return events_; }
    void clear() noexcept { events_.clear(); }

private:
    std::vector<TraceEvent> events_;
};

}  // namespace pcycle
