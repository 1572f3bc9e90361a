#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latdom/latin.hpp"
#include "latdom/solver.hpp"

namespace latdom {

/// A bounds report and a certificate describe different instances.
class MismatchError : public Error {
public:
    explicit MismatchError(const std::string& what) : Error(what) {}
};

enum class SquareStructure { General, Cyclic, QStep };

/// What is known about how the square was generated. Tighter bounds
/// apply to the canonical cyclic and q-step families.
struct StructureInfo {
    SquareStructure kind = SquareStructure::General;
    int q = 0;
    int m = 0;

    static StructureInfo general() { return {}; }
    static StructureInfo cyclic() { return {SquareStructure::Cyclic, 0, 0}; }
    static StructureInfo q_step(int q, int m) { return {SquareStructure::QStep, q, m}; }

    friend bool operator==(const StructureInfo&, const StructureInfo&) = default;
};

/// Checks a square against the canonical generators: cyclic(n) first,
/// then q_step(q, m) over the divisors of n with the smallest q first.
StructureInfo detect_structure(const LatinSquare& square);

struct Bound {
    int value = 0;
    std::string source;

    friend bool operator==(const Bound&, const Bound&) = default;
};

struct TheoremSource {
    std::string label;
    std::string formula;
};

/// Best closed-form bracket for one instance. `exact` is present only
/// when a formula pins the value down completely; lower <= exact <=
/// upper always holds when it is.
struct BoundsReport {
    int n = 0;
    DominationMode mode;
    Bound lower;
    Bound upper;
    std::optional<Bound> exact;
    std::vector<TheoremSource> sources;
};

/// Bracket for the plain domination number of the graph of any square
/// of order n (n >= 2), sharpened by structure knowledge.
BoundsReport gamma_bounds(int n, const StructureInfo& structure = {});

/// Bracket for the k-tuple total domination number, 1 <= k <= 3(n-1).
/// Throws InfeasibleError above the cap.
BoundsReport ktds_bounds(int n, int k, const StructureInfo& structure = {});

struct ConsistencyResult {
    bool ok = true;
    std::string message;
};

/// Cross-checks a certificate against a report for the same instance:
/// any size below the lower bound is a contradiction, and an optimal
/// size must respect the upper bound and any established exact value.
/// Throws MismatchError when order or mode differ.
ConsistencyResult consistency_check(const BoundsReport& report, const DominationCertificate& cert);

} // namespace latdom
