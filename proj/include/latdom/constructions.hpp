#pragma once

#include "latdom/latin.hpp"
#include "latdom/graph.hpp"
#include "latdom/solver.hpp"

namespace latdom {

/// The construction does not apply at this order.
class OrderTooSmallError : public Error {
public:
    explicit OrderTooSmallError(const std::string& what) : Error(what) {}
};

/// A q-step specific construction was handed a square that is not the
/// canonical q-step square for the stated (q, m).
class NotCanonicalQStepError : public Error {
public:
    explicit NotCanonicalQStepError(const std::string& what) : Error(what) {}
};

/// The search-based construction could not produce a verified set.
class ConstructionFailedError : public Error {
public:
    explicit ConstructionFailedError(const std::string& what) : Error(what) {}
};

/// k-tuple total dominating set on any square of order n >= 3, built
/// from whole symbol classes:
///   k = 1       -> the first n-1 cells of row 1,
///   k = 2a      -> all cells holding symbols 1..a (size an), a <= n,
///   k = 2a + 1  -> symbols 1..a plus the row-1 cells with symbols
///                  above a (size an + n - a), a <= n-2,
/// and the whole vertex set for the few largest demands the formulas
/// do not reach. Throws OrderTooSmallError (n < 3) or InfeasibleError
/// (k > 3(n-1)).
VertexSet ktds_construction(const LatinSquare& square, int k);

/// 1-tuple total dominating set tailored to the canonical q-step square
/// of order n = qm: size n - q when m >= q + 1, size n - m + 1 when
/// m <= q. The square must equal q_step(q, m) exactly, otherwise
/// NotCanonicalQStepError.
VertexSet qstep_1tds_construction(int q, int m, const LatinSquare& square);

/// Dominating set of size 2f + g on cyclic(n), where n = 3f + g with
/// 0 <= g <= 2. Needs n >= 3 so that f >= 1.
VertexSet cyclic_domination_construction(int n);

struct GeneralDomination {
    VertexSet set;
    /// Row and column relabeling used to push an intercalate-like pair
    /// of symbol-1 cells into the bottom-right corner before choosing
    /// the set. Symbols are left alone.
    Isotopy normalization;
};

/// Dominating set of size n - 2 on an arbitrary square of order n >= 6.
/// Tries every normalization anchored at an ordered pair of symbol-1
/// cells and every compatible choice of special cells, first-fit in a
/// fixed order, and only returns a set that passes verification.
/// Throws OrderTooSmallError (n < 6) or ConstructionFailedError.
GeneralDomination general_domination_construction(const LatinSquare& square);

} // namespace latdom
