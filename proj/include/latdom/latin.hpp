#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "latdom/error.hpp"

namespace latdom {

/// A cell of a latin square: row r, column c and the symbol s held there.
/// All three components are 1-based; s is always the symbol the square
/// actually stores at (r, c).
struct CellTriple {
    int r = 0;
    int c = 0;
    int s = 0;

    friend bool operator==(const CellTriple&, const CellTriple&) = default;
    friend auto operator<=>(const CellTriple&, const CellTriple&) = default;
};

/// Renders a triple as "(r,c,s)".
std::string to_string(const CellTriple& t);

/// Candidate grid is not square, or holds an entry outside 1..n.
class BadShapeError : public Error {
public:
    explicit BadShapeError(const std::string& what) : Error(what) {}
};

/// A row or column repeats a symbol. Carries which axis, the 1-based
/// index of the offending line and the repeated symbol.
class NotLatinError : public Error {
public:
    enum class Axis { Row, Column };

    NotLatinError(Axis axis, int index, int symbol);

    Axis axis() const noexcept { return axis_; }
    int index() const noexcept { return index_; }
    int symbol() const noexcept { return symbol_; }

private:
    Axis axis_;
    int index_;
    int symbol_;
};

/// Two objects that must share an order do not.
class DimensionMismatchError : public Error {
public:
    explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

/// Malformed textual or JSON input.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// An n x n grid over symbols 1..n in which every row and every column
/// holds each symbol exactly once. Immutable once constructed; every
/// factory validates, so an instance is always a genuine latin square.
class LatinSquare {
public:
    /// Validates and adopts a nested grid. Throws BadShapeError or
    /// NotLatinError (rows are checked before columns).
    static LatinSquare from_grid(const std::vector<std::vector<int>>& grid);

    /// Addition-table square: cell (r, c) holds ((r + c - 2) mod n) + 1.
    static LatinSquare cyclic(int n);

    /// Block square of order n = q*m built from m^2 blocks of order q.
    /// Block (i, j) uses the symbol band b = (i + j - 2) mod m, i.e.
    /// symbols b*q + 1 .. b*q + q arranged cyclically inside the block.
    /// q_step(1, m) coincides with cyclic(m).
    static LatinSquare q_step(int q, int m);

    int order() const noexcept { return n_; }

    /// Symbol at 1-based (r, c); throws std::out_of_range off the grid.
    int at(int r, int c) const;

    /// The full (r, c, s) triple for a 1-based cell.
    CellTriple triple(int r, int c) const;

    /// Row-major symbols, length order()^2.
    const std::vector<int>& cells() const noexcept { return cells_; }

    /// Copy as nested rows, convenient for re-feeding from_grid.
    std::vector<std::vector<int>> grid() const;

    friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

private:
    LatinSquare(int n, std::vector<int> cells);
    static LatinSquare checked(int n, std::vector<int> cells);

    int n_ = 0;
    std::vector<int> cells_;
};

/// A triple of permutations of 1..n acting on rows, columns and symbols.
/// Components are stored as 1-based images: row(i) is where row i goes.
class Isotopy {
public:
    /// Each vector must be a permutation of 1..n (checked, throws
    /// std::invalid_argument otherwise).
    Isotopy(std::vector<int> rows, std::vector<int> cols, std::vector<int> syms);

    static Isotopy identity(int n);

    int order() const noexcept { return static_cast<int>(rows_.size()); }

    int row(int r) const;
    int col(int c) const;
    int sym(int s) const;

    Isotopy inverse() const;

    friend bool operator==(const Isotopy&, const Isotopy&) = default;

private:
    std::vector<int> rows_;
    std::vector<int> cols_;
    std::vector<int> syms_;
};

/// New square with cell (row(r), col(c)) holding sym(s) for every cell
/// (r, c, s) of the input. Throws DimensionMismatchError when the
/// isotopy order differs from the square order.
LatinSquare apply_isotopy(const LatinSquare& square, const Isotopy& iso);

struct RandomSquare {
    LatinSquare square;
    Isotopy isotopy;
};

/// Applies a seeded random isotopy to a base square. The same seed
/// always yields the same square on every platform.
RandomSquare random_isotopy_square(const LatinSquare& base, std::uint64_t seed);

/// A 2 x 2 latin subsquare: rows r1 < r2 and columns c1 < c2 such that
/// the four cells use exactly two symbols in a crossed pattern.
struct Intercalate {
    int r1 = 0;
    int r2 = 0;
    int c1 = 0;
    int c2 = 0;

    friend bool operator==(const Intercalate&, const Intercalate&) = default;
};

/// First intercalate in scan order (r1, then r2, then c1, then c2, each
/// ascending), or nullopt when the square has none.
std::optional<Intercalate> find_intercalate(const LatinSquare& square);

/// Reads the text grid format: a line with n followed by n rows of n
/// integers. Throws ParseError, BadShapeError or NotLatinError.
LatinSquare read_square(std::istream& in);

/// Writes the text grid format with single spaces and one row per line.
void write_square(std::ostream& out, const LatinSquare& square);

} // namespace latdom
