#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "latdom/graph.hpp"

namespace latdom {

/// The requested demand cannot be met by any vertex subset.
class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& what) : Error(what) {}
};

/// Instance is beyond the exhaustive oracle's hard size cap.
class TooLargeError : public Error {
public:
    explicit TooLargeError(const std::string& what) : Error(what) {}
};

/// What a candidate set is asked to achieve.
///
/// Dominating: every vertex outside the set has a neighbor inside it.
/// KTupleTotal: every vertex of the graph, members included, has at
/// least k neighbors inside the set (open neighborhoods, so membership
/// itself never helps).
struct DominationMode {
    enum class Kind { Dominating, KTupleTotal };

    Kind kind = Kind::Dominating;
    int k = 1;

    static DominationMode dominating() { return {Kind::Dominating, 1}; }
    static DominationMode ktuple_total(int k) { return {Kind::KTupleTotal, k}; }

    bool total() const noexcept { return kind == Kind::KTupleTotal; }

    friend bool operator==(const DominationMode&, const DominationMode&) = default;
};

/// Largest k for which a k-tuple total dominating set can exist on the
/// graph of an order-n square: open neighborhoods have 3(n-1) vertices.
int max_feasible_k(int order);

struct Violation {
    CellTriple vertex;
    int shortfall = 0;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct VerifyResult {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Checks a candidate set against a mode and reports every vertex whose
/// demand is missed, with the size of the miss. Never throws for a
/// merely bad set; throws DimensionMismatchError when the set belongs
/// to a different order.
VerifyResult verify(const LatinSquareGraph& graph, const VertexSet& candidate, DominationMode mode);

/// A solved or constructed instance, self-contained enough to recheck:
/// the square, the mode, the set, and how the set was produced.
struct DominationCertificate {
    LatinSquare square;
    DominationMode mode;
    VertexSet set;
    int size = 0;
    bool optimal = false;
    std::string method;
};

struct SolveOptions {
    /// Abort the search after this many explored nodes and fall back to
    /// the greedy incumbent (certificate comes back with optimal false).
    std::optional<std::uint64_t> node_budget;

    /// When true the returned optimal set is the lexicographically
    /// smallest minimum set in row-major vertex order, regardless of
    /// thread count.
    bool deterministic = true;

    int threads = 1;
};

struct SolveStats {
    std::uint64_t nodes = 0;
    int first_target = 0;
    bool budget_exceeded = false;
};

/// Exact minimum dominating / k-tuple total dominating set by iterative
/// deepening over the target size with a pruned include/exclude search.
/// Throws InfeasibleError when the demand is impossible (k > 3(n-1)).
DominationCertificate solve_exact(const LatinSquareGraph& graph, DominationMode mode,
                                  const SolveOptions& options = {}, SolveStats* stats = nullptr);

/// Independent reference answer: enumerates subsets by size and then
/// lexicographically, with adjacency recomputed from cell triples
/// rather than reusing the solver's machinery. Capped at n^2 <= 25;
/// throws TooLargeError beyond that.
DominationCertificate brute_force_oracle(const LatinSquareGraph& graph, DominationMode mode);

/// Fast feasible set: repeatedly takes the vertex covering the most
/// outstanding demand (lowest index on ties). Not optimal in general.
DominationCertificate greedy_upper(const LatinSquareGraph& graph, DominationMode mode);

/// JSON document I/O for certificates. Writing is canonical: the same
/// certificate always produces identical bytes, and reading back what
/// was written reproduces the certificate exactly.
void write_certificate(std::ostream& out, const DominationCertificate& cert);
DominationCertificate read_certificate(std::istream& in);
std::string certificate_to_string(const DominationCertificate& cert);

} // namespace latdom
