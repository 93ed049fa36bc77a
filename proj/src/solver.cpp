#include "pcycle/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "pcycle/io.hpp"
#include "pcycle/phase2.hpp"

namespace pcycle {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string cycles_string(const std::vector<Cycle>& cs) {
    if (cs.empty()) return "()";
    std::string s;
    for (const auto& c : cs) s += c.to_string();
    return s;
}

std::vector<int> one_based(const std::vector<Vertex>& vs) {
    std::vector<int> out(vs.size());
    std::transform(vs.begin(), vs.end(), out.begin(), [](Vertex v) { return v + 1; });
    return out;
}

struct TourTracker {
    const CostMatrix& m;
    std::optional<Derangement> best;
    std::optional<Cost> value;

    void offer(const Derangement& d, Cost v) {
        if (is_tour(d) && (!value || v < *value)) {
            best = d;
            value = v;
        }
    }
};

}  // namespace

Derangement random_tour(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    // Fisher-Yates with an explicit draw so the result does not depend on the
    // standard library's shuffle.
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(order[i], order[j]);
    }
    std::vector<Vertex> image(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) image[order[k]] = order[(k + 1) % n];
    return Derangement(std::move(image));
}

SolveReport solve(const CostMatrix& m, const SolveOptions& opts, Trace* trace) {
    if (opts.phases < 1 || opts.phases > 3) throw InvalidArgument("phases must be 1, 12 or 123");
    if (opts.restarts < 1) throw InvalidArgument("restarts must be >= 1");
    const int n = m.size();
    const Phase1Config cfg = opts.phase1.value_or(Phase1Config::defaults_for(n));

    SolveReport rep;
    rep.n = n;
    rep.checksum = matrix_checksum(m);
    TourTracker tours{m, std::nullopt, std::nullopt};

    auto t0 = Clock::now();
    std::optional<Phase1Result> chosen;
    for (int k = 0; k < opts.restarts; ++k) {
        const Derangement d0 = k == 0 ? Derangement::cyclic(n) : random_tour(n, opts.seed + static_cast<std::uint64_t>(k));
        Trace local;
        Phase1Result p1 = run_phase1(m, d0, cfg, trace ? &local : nullptr);
        tours.offer(d0, p1.values.front());
        for (std::size_t i = 0; i < p1.steps.size(); ++i) tours.offer(p1.steps[i].next, p1.values[i + 1]);
        rep.restarts.push_back({p1.values.front(), p1.values.back(), static_cast<int>(p1.steps.size())});
        if (!chosen || p1.values.back() < chosen->values.back()) {
            chosen = std::move(p1);
            rep.chosen_restart = k;
            if (trace) {
                trace->clear();
                for (const auto& e : local.events()) trace->record(e);
            }
        }
    }
    rep.initial_value = chosen->values.front();
    for (std::size_t i = 0; i < chosen->steps.size(); ++i) {
        const auto& st = chosen->steps[i];
        rep.applied.push_back({1, st.start, st.applied.perm.cycles(), st.applied.total, chosen->values[i + 1]});
    }
    rep.phase1_value = chosen->values.back();
    if (opts.timings) rep.timings.emplace_back("phase1", seconds_since(t0));

    Derangement current = chosen->final;
    if (opts.phases >= 2) {
        t0 = Clock::now();
        Phase2Result p2 = run_phase2(m, current, Phase2Options{opts.keep_equal_paths}, trace);
        Cost v = rep.phase1_value;
        Derangement d = current;
        for (const auto& vc : p2.applied) {
            v += vc.total;
            d = apply_cycle(d, vc.cycle);
            tours.offer(d, v);
            rep.applied.push_back({2, -1, {vc.cycle}, vc.total, v});
        }
        rep.ap_value = v;
        rep.ap_solution = p2.optimum;
        rep.phase2_passes = p2.passes;
        rep.equal_alternates = p2.equal_alternates;
        current = p2.optimum;
        if (opts.timings) rep.timings.emplace_back("phase2", seconds_since(t0));
    }

    if (opts.phases >= 3) {
        t0 = Clock::now();
        Phase3Options p3o;
        p3o.budget_cap = opts.budget_cap;
        PatchResult pr = run_phase3(m, current, tours.best, p3o, trace);
        rep.tour = pr.tour;
        rep.tour_value = derangement_value(m, pr.tour);
        rep.patch_added = pr.added_value;
        rep.patch_cycles = pr.cycles_used;
        rep.exactness = pr.exactness;
        if (opts.timings) rep.timings.emplace_back("phase3", seconds_since(t0));
    } else if (tours.best) {
        rep.tour = tours.best;
        rep.tour_value = tours.value;
        // a tour at the AP value cannot be beaten
        rep.exactness = rep.ap_value && *rep.ap_value == *tours.value ? Exactness::CertifiedOptimal : Exactness::Heuristic;
    }
    return rep;
}

std::string report_to_json(const SolveReport& r) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["instance"] = {{"n", r.n}, {"checksum", hex64(r.checksum)}};
    j["initial_value"] = r.initial_value;
    ordered_json rs = ordered_json::array();
    for (const auto& s : r.restarts) {
        rs.push_back({{"initial_value", s.initial_value}, {"final_value", s.final_value}, {"steps", s.steps}});
    }
    j["restarts"] = rs;
    j["chosen_restart"] = r.chosen_restart;
    ordered_json applied = ordered_json::array();
    for (const auto& a : r.applied) {
        ordered_json e{{"phase", a.phase}};
        if (a.start >= 0) e["start"] = a.start + 1;
        e["cycles"] = cycles_string(a.cycles);
        e["total"] = a.total;
        e["value_after"] = a.value_after;
        applied.push_back(e);
    }
    j["applied"] = applied;
    j["phase1_value"] = r.phase1_value;
    j["ap_value"] = r.ap_value ? ordered_json(*r.ap_value) : ordered_json(nullptr);
    j["ap_solution"] = r.ap_solution ? ordered_json(r.ap_solution->to_string()) : ordered_json(nullptr);
    j["phase2_passes"] = r.phase2_passes;
    j["equal_alternates"] = r.equal_alternates;
    j["tour_value"] = r.tour_value ? ordered_json(*r.tour_value) : ordered_json(nullptr);
    j["tour"] = r.tour ? ordered_json(r.tour->to_string()) : ordered_json(nullptr);
    j["patch_added"] = r.patch_added ? ordered_json(*r.patch_added) : ordered_json(nullptr);
    j["patch_cycles"] = r.patch_cycles.empty() ? "()" : r.patch_cycles.to_string();
    j["exactness"] = std::string(to_string(r.exactness));
    if (!r.timings.empty()) {
        ordered_json t;
        for (const auto& [k, v] : r.timings) t[k] = v;
        j["timings"] = t;
    }
    return j.dump(2) + "\n";
}

std::string report_to_text(const SolveReport& r) {
    std::ostringstream o;
    o << "n: " << r.n << "\n";
    o << "checksum: " << hex64(r.checksum) << "\n";
    o << "initial_value: " << r.initial_value << "\n";
    if (r.restarts.size() > 1) {
        o << "restarts: " << r.restarts.size() << " (chosen " << r.chosen_restart << ")\n";
    }
    for (const auto& a : r.applied) {
        o << "applied: phase " << a.phase;
        if (a.start >= 0) o << " start " << a.start + 1;
        o << " " << cycles_string(a.cycles) << " total " << a.total << " -> " << a.value_after << "\n";
    }
    o << "phase1_value: " << r.phase1_value << "\n";
    if (r.ap_value) {
        o << "ap_value: " << *r.ap_value << "\n";
        o << "ap_solution: " << r.ap_solution->to_string() << "\n";
        o << "phase2_passes: " << r.phase2_passes << "\n";
    }
    if (r.tour_value) {
        o << "tour_value: " << *r.tour_value << "\n";
        o << "tour: " << r.tour->to_string() << "\n";
    } else {
        o << "tour_value: none\n";
    }
    if (r.patch_added) o << "patch: " << (r.patch_cycles.empty() ? "()" : r.patch_cycles.to_string()) << " added " << *r.patch_added << "\n";
    o << "exactness: " << to_string(r.exactness) << "\n";
    for (const auto& [k, v] : r.timings) o << "time_" << k << ": " << v << "\n";
    return o.str();
}

std::string event_to_json(const TraceEvent& e) {
    nlohmann::ordered_json j;
    j["event"] = std::string(to_string(e.kind));
    j["phase"] = e.phase;
    if (e.start >= 0) j["start"] = e.start + 1;
    if (e.trial) j["trial"] = e.trial;
    if (e.pass) j["pass"] = e.pass;
    if (!e.path.empty()) j["path"] = one_based(e.path);
    if (!e.cycles.empty()) {
        j["cycles"] = cycles_string(e.cycles);
        j["total"] = e.total;
    }
    if (e.kind == EventKind::BoundedCycles || e.kind == EventKind::PatchAttempt) j["budget"] = e.budget;
    if (e.count) j["count"] = e.count;
    if (!e.note.empty()) j["note"] = e.note;
    j["value_before"] = e.value_before;
    j["value_after"] = e.value_after;
    return j.dump();
}

std::string event_to_text(const TraceEvent& e) {
    std::ostringstream o;
    o << "[p" << e.phase << "] " << to_string(e.kind);
    if (e.start >= 0) o << " start=" << e.start + 1;
    if (e.trial) o << " trial=" << e.trial;
    if (e.pass) o << " pass=" << e.pass;
    if (!e.path.empty()) {
        o << " path=[";
        for (std::size_t k = 0; k < e.path.size(); ++k) o << (k ? ", " : "") << e.path[k] + 1;
        o << "]";
    }
    if (!e.cycles.empty()) o << " " << cycles_string(e.cycles) << " total=" << e.total;
    if (e.kind == EventKind::BoundedCycles || e.kind == EventKind::PatchAttempt) o << " budget=" << e.budget;
    if (e.count) o << " count=" << e.count;
    if (!e.note.empty()) o << " " << e.note;
    o << " value=" << e.value_after;
    return o.str();
}

}  // namespace pcycle
