#include "latdom/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <climits>
#include <functional>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace latdom {

namespace {

int ceil_div(long long a, long long b) {
    return static_cast<int>((a + b - 1) / b);
}

// Demand-coverage view of an instance. Selecting vertex u satisfies one
// unit of demand at every vertex of cover(u): the open neighborhood,
// plus u itself in plain dominating mode. The relation is symmetric, so
// the same structure also says who can still cover a given vertex.
struct CoverProblem {
    int vcount = 0;
    int words = 0;
    int demand = 1;
    int max_cover = 1;
    std::vector<std::uint64_t> masks;
    std::vector<std::vector<int>> lists;

    const std::uint64_t* mask(int u) const {
        return masks.data() + static_cast<std::size_t>(u) * words;
    }
};

CoverProblem make_problem(const LatinSquareGraph& g, DominationMode mode) {
    CoverProblem p;
    p.vcount = g.vertex_count();
    p.words = (p.vcount + 63) / 64;
    p.demand = mode.total() ? mode.k : 1;
    p.masks.assign(static_cast<std::size_t>(p.vcount) * p.words, 0);
    p.lists.assign(static_cast<std::size_t>(p.vcount), {});
    for (int u = 0; u < p.vcount; ++u) {
        const auto w = g.neighbors(u).words();
        std::copy(w.begin(), w.end(), p.masks.begin() + static_cast<std::size_t>(u) * p.words);
        if (!mode.total())
            p.masks[static_cast<std::size_t>(u) * p.words + (u >> 6)] |= std::uint64_t{1} << (u & 63);
        auto& lst = p.lists[static_cast<std::size_t>(u)];
        lst = g.neighbors(u).indices();
        if (!mode.total()) {
            lst.push_back(u);
            std::sort(lst.begin(), lst.end());
        }
    }
    p.max_cover = 0;
    for (const auto& lst : p.lists)
        p.max_cover = std::max(p.max_cover, static_cast<int>(lst.size()));
    return p;
}

int and_popcount(const std::uint64_t* a, const std::uint64_t* b, int words) {
    int total = 0;
    for (int i = 0; i < words; ++i)
        total += std::popcount(a[i] & b[i]);
    return total;
}

// Depth-first search for a covering set of exactly at most `slots` more
// vertices among positions pos..vcount-1. Vertices are considered in
// ascending index order and inclusion is tried before exclusion, so the
// first solution found is the lexicographically smallest one of minimum
// size. Pruning:
//   - a vertex whose selection would satisfy nothing is never included
//     (any solution using it would shrink to a smaller one),
//   - remaining demand must fit in slots * max_cover,
//   - the top `slots` per-vertex gains among the undecided suffix must
//     reach the remaining demand,
//   - every vertex must keep at least deficit-many undecided coverers.
class TargetSearch {
public:
    struct State {
        std::vector<int> cover_count;
        std::vector<int> avail;
        std::vector<int> chosen;
        std::vector<std::uint64_t> active;
        long long total_deficit = 0;
        int pos = 0;
        int slots = 0;
    };

    TargetSearch(const CoverProblem& p, std::atomic<std::uint64_t>& nodes, std::uint64_t budget,
                 std::atomic<bool>& stop, std::atomic<bool>& budget_blown)
        : p_(p), nodes_(nodes), budget_(budget), stop_(stop), budget_blown_(budget_blown) {}

    void reset() {
        cover_count_.assign(static_cast<std::size_t>(p_.vcount), 0);
        avail_.resize(static_cast<std::size_t>(p_.vcount));
        for (int v = 0; v < p_.vcount; ++v)
            avail_[static_cast<std::size_t>(v)] = static_cast<int>(p_.lists[static_cast<std::size_t>(v)].size());
        active_.assign(static_cast<std::size_t>(p_.words), 0);
        for (int v = 0; v < p_.vcount; ++v)
            active_[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63);
        total_deficit_ = static_cast<long long>(p_.demand) * p_.vcount;
        chosen_.clear();
        interrupted_ = false;
    }

    State snapshot(int pos, int slots) const {
        return State{cover_count_, avail_, chosen_, active_, total_deficit_, pos, slots};
    }

    void restore(const State& st) {
        cover_count_ = st.cover_count;
        avail_ = st.avail;
        chosen_ = st.chosen;
        active_ = st.active;
        total_deficit_ = st.total_deficit;
        interrupted_ = false;
    }

    // frontier != nullptr turns the search into a depth-limited expander
    // that parks unresolved subtrees instead of descending past `depth`.
    bool dfs(int pos, int slots, int depth, std::vector<State>* frontier) {
        if (total_deficit_ == 0) {
            found_ = chosen_;
            return true;
        }
        if (slots == 0 || pos == p_.vcount)
            return false;
        if (frontier && depth == 0) {
            frontier->push_back(snapshot(pos, slots));
            return false;
        }
        if (!tick()) {
            interrupted_ = true;
            return false;
        }
        if (total_deficit_ > static_cast<long long>(slots) * p_.max_cover)
            return false;

        gains_.clear();
        long long gain_sum = 0;
        int gain_pos = 0;
        for (int u = pos; u < p_.vcount; ++u) {
            const int gn = and_popcount(p_.mask(u), active_.data(), p_.words);
            if (u == pos)
                gain_pos = gn;
            if (gn > 0) {
                gains_.push_back(gn);
                gain_sum += gn;
            }
        }
        if (gain_sum < total_deficit_)
            return false;
        if (static_cast<int>(gains_.size()) > slots) {
            std::nth_element(gains_.begin(), gains_.begin() + slots, gains_.end(), std::greater<int>());
            long long top = 0;
            for (int i = 0; i < slots; ++i)
                top += gains_[static_cast<std::size_t>(i)];
            if (top < total_deficit_)
                return false;
        }

        if (gain_pos > 0) {
            chosen_.push_back(pos);
            include(pos);
            if (dfs(pos + 1, slots - 1, depth - 1, frontier))
                return true;
            undo_include(pos);
            chosen_.pop_back();
            if (interrupted_)
                return false;
        }
        if (exclude(pos)) {
            const bool hit = dfs(pos + 1, slots, depth - 1, frontier);
            undo_exclude(pos);
            if (hit)
                return true;
        }
        return false;
    }

    const std::vector<int>& found() const noexcept { return found_; }
    bool interrupted() const noexcept { return interrupted_; }

private:
    bool tick() {
        if (stop_.load(std::memory_order_relaxed))
            return false;
        const auto seen = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (budget_ != 0 && seen > budget_) {
            budget_blown_.store(true, std::memory_order_relaxed);
            stop_.store(true, std::memory_order_relaxed);
            return false;
        }
        return true;
    }

    void include(int u) {
        for (int v : p_.lists[static_cast<std::size_t>(u)]) {
            --avail_[static_cast<std::size_t>(v)];
            const int deficit = p_.demand - cover_count_[static_cast<std::size_t>(v)];
            ++cover_count_[static_cast<std::size_t>(v)];
            if (deficit > 0) {
                --total_deficit_;
                if (deficit == 1)
                    active_[static_cast<std::size_t>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63));
            }
        }
    }

    void undo_include(int u) {
        for (int v : p_.lists[static_cast<std::size_t>(u)]) {
            --cover_count_[static_cast<std::size_t>(v)];
            ++avail_[static_cast<std::size_t>(v)];
            const int deficit = p_.demand - cover_count_[static_cast<std::size_t>(v)];
            if (deficit > 0) {
                ++total_deficit_;
                if (deficit == 1)
                    active_[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63);
            }
        }
    }

    bool exclude(int u) {
        const auto& lst = p_.lists[static_cast<std::size_t>(u)];
        for (std::size_t i = 0; i < lst.size(); ++i) {
            const int v = lst[i];
            if (--avail_[static_cast<std::size_t>(v)] <
                p_.demand - cover_count_[static_cast<std::size_t>(v)]) {
                for (std::size_t j = 0; j <= i; ++j)
                    ++avail_[static_cast<std::size_t>(lst[j])];
                return false;
            }
        }
        return true;
    }

    void undo_exclude(int u) {
        for (int v : p_.lists[static_cast<std::size_t>(u)])
            ++avail_[static_cast<std::size_t>(v)];
    }

    const CoverProblem& p_;
    std::atomic<std::uint64_t>& nodes_;
    std::uint64_t budget_;
    std::atomic<bool>& stop_;
    std::atomic<bool>& budget_blown_;

    std::vector<int> cover_count_;
    std::vector<int> avail_;
    std::vector<std::uint64_t> active_;
    std::vector<int> chosen_;
    std::vector<int> found_;
    std::vector<int> gains_;
    long long total_deficit_ = 0;
    bool interrupted_ = false;
};

enum class TargetOutcome { Found, Infeasible, Interrupted };

struct TargetResult {
    TargetOutcome outcome = TargetOutcome::Infeasible;
    std::vector<int> set;
};

TargetResult search_target_seq(const CoverProblem& p, int t, std::atomic<std::uint64_t>& nodes,
                               std::uint64_t budget, std::atomic<bool>& budget_blown) {
    std::atomic<bool> stop{false};
    TargetSearch ts(p, nodes, budget, stop, budget_blown);
    ts.reset();
    if (ts.dfs(0, t, INT_MAX, nullptr))
        return {TargetOutcome::Found, ts.found()};
    if (ts.interrupted())
        return {TargetOutcome::Interrupted, {}};
    return {TargetOutcome::Infeasible, {}};
}

TargetResult search_target_parallel(const CoverProblem& p, int t, int threads,
                                    std::atomic<std::uint64_t>& nodes, std::uint64_t budget,
                                    std::atomic<bool>& budget_blown) {
    std::atomic<bool> stop{false};
    TargetSearch root(p, nodes, budget, stop, budget_blown);

    std::vector<TargetSearch::State> frontier;
    const int want = threads * 8;
    for (int depth = 4;; depth += 2) {
        frontier.clear();
        root.reset();
        if (root.dfs(0, t, depth, &frontier))
            return {TargetOutcome::Found, root.found()};
        if (root.interrupted())
            return {TargetOutcome::Interrupted, {}};
        if (static_cast<int>(frontier.size()) >= want || frontier.empty() || depth >= 24)
            break;
    }
    if (frontier.empty())
        return {TargetOutcome::Infeasible, {}};

    std::atomic<std::size_t> next{0};
    std::mutex result_mutex;
    std::vector<int> result;
    std::atomic<bool> have_result{false};
    std::atomic<bool> interrupted{false};

    auto worker = [&] {
        TargetSearch ts(p, nodes, budget, stop, budget_blown);
        for (;;) {
            if (stop.load(std::memory_order_relaxed))
                return;
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= frontier.size())
                return;
            ts.restore(frontier[i]);
            if (ts.dfs(frontier[i].pos, frontier[i].slots, INT_MAX, nullptr)) {
                {
                    const std::lock_guard<std::mutex> lock(result_mutex);
                    if (!have_result.load(std::memory_order_relaxed)) {
                        result = ts.found();
                        have_result.store(true, std::memory_order_relaxed);
                    }
                }
                stop.store(true, std::memory_order_relaxed);
                return;
            }
            if (ts.interrupted()) {
                interrupted.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();

    if (have_result.load())
        return {TargetOutcome::Found, result};
    if (interrupted.load() || budget_blown.load())
        return {TargetOutcome::Interrupted, {}};
    return {TargetOutcome::Infeasible, {}};
}

void validate_mode(const LatinSquareGraph& g, DominationMode mode) {
    if (mode.k < 1)
        throw std::invalid_argument("k must be at least 1");
    if (!mode.total() && mode.k != 1)
        throw std::invalid_argument("plain dominating mode carries k = 1");
    if (mode.total() && mode.k > max_feasible_k(g.order()))
        throw InfeasibleError("k = " + std::to_string(mode.k) + " exceeds the open neighborhood size 3(n-1) = " +
                              std::to_string(max_feasible_k(g.order())) + " at order " +
                              std::to_string(g.order()));
}

VertexSet set_from_indices(int order, const std::vector<int>& idx) {
    VertexSet s(order);
    for (int i : idx)
        s.set(i);
    return s;
}

} // namespace

int max_feasible_k(int order) {
    return 3 * (order - 1);
}

VerifyResult verify(const LatinSquareGraph& graph, const VertexSet& candidate, DominationMode mode) {
    if (candidate.order() != graph.order())
        throw DimensionMismatchError("candidate set has order " + std::to_string(candidate.order()) +
                                     " but the graph has order " + std::to_string(graph.order()));
    if (mode.k < 1)
        throw std::invalid_argument("k must be at least 1");
    VerifyResult res;
    for (int v = 0; v < graph.vertex_count(); ++v) {
        const int have = graph.neighbors(v).intersection_count(candidate);
        const int need = mode.total() ? mode.k : (candidate.test(v) ? 0 : 1);
        if (have < need)
            res.violations.push_back(Violation{graph.triple_of(v), need - have});
    }
    return res;
}

DominationCertificate greedy_upper(const LatinSquareGraph& graph, DominationMode mode) {
    validate_mode(graph, mode);
    const CoverProblem p = make_problem(graph, mode);
    std::vector<int> deficit(static_cast<std::size_t>(p.vcount), p.demand);
    std::vector<std::uint64_t> active(static_cast<std::size_t>(p.words), 0);
    for (int v = 0; v < p.vcount; ++v)
        active[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63);
    std::vector<char> taken(static_cast<std::size_t>(p.vcount), 0);
    long long outstanding = static_cast<long long>(p.demand) * p.vcount;

    std::vector<int> picks;
    while (outstanding > 0) {
        int best = -1;
        int best_gain = 0;
        for (int u = 0; u < p.vcount; ++u) {
            if (taken[static_cast<std::size_t>(u)])
                continue;
            const int gn = and_popcount(p.mask(u), active.data(), p.words);
            if (gn > best_gain) {
                best_gain = gn;
                best = u;
            }
        }
        if (best < 0)
            throw InfeasibleError("no selection can cover the remaining demand");
        taken[static_cast<std::size_t>(best)] = 1;
        picks.push_back(best);
        for (int v : p.lists[static_cast<std::size_t>(best)]) {
            if (deficit[static_cast<std::size_t>(v)] > 0) {
                --outstanding;
                if (--deficit[static_cast<std::size_t>(v)] == 0)
                    active[static_cast<std::size_t>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63));
            }
        }
    }
    std::sort(picks.begin(), picks.end());

    DominationCertificate cert{graph.square(), mode, set_from_indices(graph.order(), picks),
                               static_cast<int>(picks.size()), false, "greedy"};
    return cert;
}

DominationCertificate solve_exact(const LatinSquareGraph& graph, DominationMode mode,
                                  const SolveOptions& options, SolveStats* stats) {
    validate_mode(graph, mode);
    const CoverProblem p = make_problem(graph, mode);
    const DominationCertificate incumbent = greedy_upper(graph, mode);

    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> budget_blown{false};
    const std::uint64_t budget = options.node_budget.value_or(0);
    const int threads = std::max(1, options.threads);

    const long long total_demand = static_cast<long long>(p.demand) * p.vcount;
    int lb = std::max(1, ceil_div(total_demand, p.max_cover));
    if (mode.total())
        lb = std::max(lb, mode.k + 1);

    if (stats)
        *stats = SolveStats{0, lb, false};

    std::vector<int> best;
    int found_t = -1;
    for (int t = lb; t <= incumbent.size; ++t) {
        TargetResult r = (threads == 1)
                             ? search_target_seq(p, t, nodes, budget, budget_blown)
                             : search_target_parallel(p, t, threads, nodes, budget, budget_blown);
        if (r.outcome == TargetOutcome::Found) {
            found_t = t;
            best = std::move(r.set);
            break;
        }
        if (r.outcome == TargetOutcome::Interrupted)
            break;
    }

    if (found_t >= 0 && threads > 1 && options.deterministic) {
        // The parallel pass proves the size; rerun the sequential search
        // at that size so the reported set is the lexicographic one.
        std::atomic<bool> no_budget_blown{false};
        TargetResult r = search_target_seq(p, found_t, nodes, 0, no_budget_blown);
        if (r.outcome != TargetOutcome::Found)
            throw std::logic_error("deterministic replay missed a proven feasible size");
        best = std::move(r.set);
    }

    if (stats) {
        stats->nodes = nodes.load();
        stats->budget_exceeded = budget_blown.load();
    }

    if (found_t < 0) {
        if (budget_blown.load())
            return incumbent;
        throw std::logic_error("search exhausted all sizes up to a known feasible one");
    }

    DominationCertificate cert{graph.square(), mode, set_from_indices(graph.order(), best),
                               found_t, true, "exact"};
    return cert;
}

DominationCertificate brute_force_oracle(const LatinSquareGraph& graph, DominationMode mode) {
    const int n = graph.order();
    const int v = n * n;
    if (v > 25)
        throw TooLargeError("exhaustive oracle is capped at n^2 <= 25, got n = " + std::to_string(n));
    validate_mode(graph, mode);

    // Adjacency rebuilt here straight from the cell triples so the
    // oracle shares nothing with the solver's precomputed masks.
    const LatinSquare& sq = graph.square();
    std::vector<std::uint64_t> covers(static_cast<std::size_t>(v), 0);
    for (int a = 0; a < v; ++a) {
        const CellTriple ta = sq.triple(a / n + 1, a % n + 1);
        for (int b = 0; b < v; ++b) {
            if (a == b) {
                if (!mode.total())
                    covers[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
                continue;
            }
            const CellTriple tb = sq.triple(b / n + 1, b % n + 1);
            if (ta.r == tb.r || ta.c == tb.c || ta.s == tb.s)
                covers[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
        }
    }

    const int demand = mode.total() ? mode.k : 1;
    auto satisfied = [&](std::uint64_t members) {
        for (int a = 0; a < v; ++a) {
            const int have = std::popcount(covers[static_cast<std::size_t>(a)] & members);
            if (have < demand)
                return false;
        }
        return true;
    };

    for (int size = 0; size <= v; ++size) {
        std::vector<int> idx(static_cast<std::size_t>(size));
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            std::uint64_t members = 0;
            for (int i : idx)
                members |= std::uint64_t{1} << i;
            if (satisfied(members)) {
                return DominationCertificate{sq, mode, set_from_indices(n, idx),
                                             size, true, "exact"};
            }
            // next combination in lexicographic order
            int i = size - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == v - size + i)
                --i;
            if (i < 0)
                break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    throw std::logic_error("exhaustive enumeration found nothing, which cannot happen for a feasible mode");
}

namespace {

const char* mode_tag(DominationMode mode) {
    return mode.total() ? "ktt" : "dom";
}

} // namespace

std::string certificate_to_string(const DominationCertificate& cert) {
    nlohmann::ordered_json j;
    j["order"] = cert.square.order();
    j["grid"] = cert.square.grid();
    j["mode"] = mode_tag(cert.mode);
    j["k"] = cert.mode.total() ? cert.mode.k : 1;
    nlohmann::ordered_json set = nlohmann::ordered_json::array();
    for (const CellTriple& t : cert.set.cells(cert.square))
        set.push_back({t.r, t.c, t.s});
    j["set"] = std::move(set);
    j["size"] = cert.size;
    j["optimal"] = cert.optimal;
    j["method"] = cert.method;
    return j.dump(2) + "\n";
}

void write_certificate(std::ostream& out, const DominationCertificate& cert) {
    out << certificate_to_string(cert);
}

DominationCertificate read_certificate(std::istream& in) {
    nlohmann::ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("certificate is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ParseError("certificate must be a JSON object");
    static const char* const required[] = {"order", "grid", "mode", "k",
                                           "set",   "size", "optimal", "method"};
    for (const char* key : required)
        if (!j.contains(key))
            throw ParseError(std::string("certificate is missing field '") + key + "'");
    if (j.size() != 8)
        throw ParseError("certificate has unexpected extra fields");

    if (!j["order"].is_number_integer())
        throw ParseError("'order' must be an integer");
    const int order = j["order"].get<int>();

    std::vector<std::vector<int>> grid;
    try {
        grid = j["grid"].get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError("'grid' must be an array of integer rows");
    }
    LatinSquare square = LatinSquare::from_grid(grid);
    if (square.order() != order)
        throw ParseError("'order' is " + std::to_string(order) + " but the grid has order " +
                         std::to_string(square.order()));

    if (!j["mode"].is_string())
        throw ParseError("'mode' must be a string");
    const std::string mode_str = j["mode"].get<std::string>();
    if (!j["k"].is_number_integer())
        throw ParseError("'k' must be an integer");
    const int k = j["k"].get<int>();
    DominationMode mode;
    if (mode_str == "dom") {
        if (k != 1)
            throw ParseError("'k' must be 1 in dom mode");
        mode = DominationMode::dominating();
    } else if (mode_str == "ktt") {
        if (k < 1)
            throw ParseError("'k' must be at least 1 in ktt mode");
        mode = DominationMode::ktuple_total(k);
    } else {
        throw ParseError("'mode' must be \"dom\" or \"ktt\"");
    }

    if (!j["set"].is_array())
        throw ParseError("'set' must be an array of [r, c, s] triples");
    VertexSet set(order);
    int members = 0;
    for (const auto& entry : j["set"]) {
        if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
            !entry[1].is_number_integer() || !entry[2].is_number_integer())
            throw ParseError("'set' entries must be [r, c, s] integer triples");
        const int r = entry[0].get<int>();
        const int c = entry[1].get<int>();
        const int s = entry[2].get<int>();
        if (r < 1 || r > order || c < 1 || c > order)
            throw ParseError("set cell (" + std::to_string(r) + "," + std::to_string(c) +
                             ") is outside the square");
        if (square.at(r, c) != s)
            throw ParseError("set cell (" + std::to_string(r) + "," + std::to_string(c) +
                             ") holds symbol " + std::to_string(square.at(r, c)) + ", not " +
                             std::to_string(s));
        if (set.contains(r, c))
            throw ParseError("set repeats cell (" + std::to_string(r) + "," + std::to_string(c) + ")");
        set.add(r, c);
        ++members;
    }

    if (!j["size"].is_number_integer())
        throw ParseError("'size' must be an integer");
    const int size = j["size"].get<int>();
    if (size != members)
        throw ParseError("'size' is " + std::to_string(size) + " but the set has " +
                         std::to_string(members) + " cells");

    if (!j["optimal"].is_boolean())
        throw ParseError("'optimal' must be a boolean");
    if (!j["method"].is_string())
        throw ParseError("'method' must be a string");

    return DominationCertificate{std::move(square), mode,      std::move(set),
                                 size,              j["optimal"].get<bool>(),
                                 j["method"].get<std::string>()};
}

} // namespace latdom
