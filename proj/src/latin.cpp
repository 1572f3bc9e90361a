#include "latdom/latin.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>

namespace latdom {

namespace {

constexpr int kMaxOrder = 1024;

// Permutations of 1..n come in from user code; reject anything else early.
void require_permutation(const std::vector<int>& p, const char* what) {
    const int n = static_cast<int>(p.size());
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int v : p) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument(std::string(what) + " component is not a permutation of 1..n");
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

// Fisher-Yates with explicit modulo draws so the result depends only on
// the mt19937_64 stream, which the standard pins down exactly.
std::vector<int> shuffled_identity(int n, std::mt19937_64& rng) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
    }
    return p;
}

} // namespace

std::string to_string(const CellTriple& t) {
    return "(" + std::to_string(t.r) + "," + std::to_string(t.c) + "," + std::to_string(t.s) + ")";
}

NotLatinError::NotLatinError(Axis axis, int index, int symbol)
    : Error(std::string(axis == Axis::Row ? "row " : "column ") + std::to_string(index) +
            " repeats symbol " + std::to_string(symbol)),
      axis_(axis), index_(index), symbol_(symbol) {}

LatinSquare::LatinSquare(int n, std::vector<int> cells) : n_(n), cells_(std::move(cells)) {}

LatinSquare LatinSquare::checked(int n, std::vector<int> cells) {
    if (n < 1)
        throw BadShapeError("order must be at least 1");
    if (static_cast<int>(cells.size()) != n * n)
        throw BadShapeError("grid is not " + std::to_string(n) + " x " + std::to_string(n));
    for (int v : cells) {
        if (v < 1 || v > n)
            throw BadShapeError("entry " + std::to_string(v) + " is outside 1.." + std::to_string(n));
    }
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int r = 0; r < n; ++r) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int c = 0; c < n; ++c) {
            const int v = cells[static_cast<std::size_t>(r) * n + c];
            if (seen[static_cast<std::size_t>(v)])
                throw NotLatinError(NotLatinError::Axis::Row, r + 1, v);
            seen[static_cast<std::size_t>(v)] = 1;
        }
    }
    for (int c = 0; c < n; ++c) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int r = 0; r < n; ++r) {
            const int v = cells[static_cast<std::size_t>(r) * n + c];
            if (seen[static_cast<std::size_t>(v)])
                throw NotLatinError(NotLatinError::Axis::Column, c + 1, v);
            seen[static_cast<std::size_t>(v)] = 1;
        }
    }
    return LatinSquare(n, std::move(cells));
}

LatinSquare LatinSquare::from_grid(const std::vector<std::vector<int>>& grid) {
    const int n = static_cast<int>(grid.size());
    if (n == 0)
        throw BadShapeError("grid is empty");
    std::vector<int> cells;
    cells.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : grid) {
        if (static_cast<int>(row.size()) != n)
            throw BadShapeError("grid is not square: a row has " + std::to_string(row.size()) +
                                " entries, expected " + std::to_string(n));
        cells.insert(cells.end(), row.begin(), row.end());
    }
    return checked(n, std::move(cells));
}

LatinSquare LatinSquare::cyclic(int n) {
    if (n < 1)
        throw BadShapeError("order must be at least 1");
    std::vector<int> cells(static_cast<std::size_t>(n) * n);
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c)
            cells[static_cast<std::size_t>(r - 1) * n + (c - 1)] = (r + c - 2) % n + 1;
    return checked(n, std::move(cells));
}

LatinSquare LatinSquare::q_step(int q, int m) {
    if (q < 1 || m < 1)
        throw BadShapeError("q and m must be at least 1");
    const int n = q * m;
    std::vector<int> cells(static_cast<std::size_t>(n) * n);
    for (int r = 1; r <= n; ++r) {
        for (int c = 1; c <= n; ++c) {
            const int i = (r - 1) / q + 1;  // block row
            const int j = (c - 1) / q + 1;  // block column
            const int band = (i + j - 2) % m;
            const int rr = (r - 1) % q + 1; // position inside the block
            const int cc = (c - 1) % q + 1;
            cells[static_cast<std::size_t>(r - 1) * n + (c - 1)] = band * q + (rr + cc - 2) % q + 1;
        }
    }
    return checked(n, std::move(cells));
}

int LatinSquare::at(int r, int c) const {
    if (r < 1 || r > n_ || c < 1 || c > n_)
        throw std::out_of_range("cell (" + std::to_string(r) + "," + std::to_string(c) +
                                ") is outside an order-" + std::to_string(n_) + " square");
    return cells_[static_cast<std::size_t>(r - 1) * n_ + (c - 1)];
}

CellTriple LatinSquare::triple(int r, int c) const {
    return CellTriple{r, c, at(r, c)};
}

std::vector<std::vector<int>> LatinSquare::grid() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n_));
    for (int r = 0; r < n_; ++r)
        out[static_cast<std::size_t>(r)].assign(cells_.begin() + static_cast<std::ptrdiff_t>(r) * n_,
                                                cells_.begin() + static_cast<std::ptrdiff_t>(r + 1) * n_);
    return out;
}

Isotopy::Isotopy(std::vector<int> rows, std::vector<int> cols, std::vector<int> syms)
    : rows_(std::move(rows)), cols_(std::move(cols)), syms_(std::move(syms)) {
    if (rows_.size() != cols_.size() || rows_.size() != syms_.size())
        throw std::invalid_argument("isotopy components differ in length");
    if (rows_.empty())
        throw std::invalid_argument("isotopy must act on at least one element");
    require_permutation(rows_, "row");
    require_permutation(cols_, "column");
    require_permutation(syms_, "symbol");
}

Isotopy Isotopy::identity(int n) {
    std::vector<int> id(static_cast<std::size_t>(n));
    std::iota(id.begin(), id.end(), 1);
    return Isotopy(id, id, id);
}

int Isotopy::row(int r) const {
    if (r < 1 || r > order())
        throw std::out_of_range("row index out of range");
    return rows_[static_cast<std::size_t>(r - 1)];
}

int Isotopy::col(int c) const {
    if (c < 1 || c > order())
        throw std::out_of_range("column index out of range");
    return cols_[static_cast<std::size_t>(c - 1)];
}

int Isotopy::sym(int s) const {
    if (s < 1 || s > order())
        throw std::out_of_range("symbol out of range");
    return syms_[static_cast<std::size_t>(s - 1)];
}

Isotopy Isotopy::inverse() const {
    const int n = order();
    std::vector<int> r(static_cast<std::size_t>(n)), c(static_cast<std::size_t>(n)), s(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        r[static_cast<std::size_t>(rows_[static_cast<std::size_t>(i - 1)] - 1)] = i;
        c[static_cast<std::size_t>(cols_[static_cast<std::size_t>(i - 1)] - 1)] = i;
        s[static_cast<std::size_t>(syms_[static_cast<std::size_t>(i - 1)] - 1)] = i;
    }
    return Isotopy(std::move(r), std::move(c), std::move(s));
}

LatinSquare apply_isotopy(const LatinSquare& square, const Isotopy& iso) {
    const int n = square.order();
    if (iso.order() != n)
        throw DimensionMismatchError("isotopy acts on " + std::to_string(iso.order()) +
                                     " elements but the square has order " + std::to_string(n));
    std::vector<std::vector<int>> grid(static_cast<std::size_t>(n),
                                       std::vector<int>(static_cast<std::size_t>(n)));
    const auto& in = square.cells();
    for (int r = 1; r <= n; ++r) {
        for (int c = 1; c <= n; ++c) {
            const int s = in[static_cast<std::size_t>(r - 1) * n + (c - 1)];
            grid[static_cast<std::size_t>(iso.row(r) - 1)][static_cast<std::size_t>(iso.col(c) - 1)] =
                iso.sym(s);
        }
    }
    return LatinSquare::from_grid(grid);
}

RandomSquare random_isotopy_square(const LatinSquare& base, std::uint64_t seed) {
    const int n = base.order();
    std::mt19937_64 rng(seed);
    auto rows = shuffled_identity(n, rng);
    auto cols = shuffled_identity(n, rng);
    auto syms = shuffled_identity(n, rng);
    Isotopy iso(std::move(rows), std::move(cols), std::move(syms));
    return RandomSquare{apply_isotopy(base, iso), iso};
}

std::optional<Intercalate> find_intercalate(const LatinSquare& square) {
    const int n = square.order();
    const auto& cells = square.cells();
    auto at0 = [&](int r, int c) { return cells[static_cast<std::size_t>(r) * n + c]; };
    for (int r1 = 0; r1 < n; ++r1)
        for (int r2 = r1 + 1; r2 < n; ++r2)
            for (int c1 = 0; c1 < n; ++c1)
                for (int c2 = c1 + 1; c2 < n; ++c2)
                    if (at0(r1, c1) == at0(r2, c2) && at0(r1, c2) == at0(r2, c1) &&
                        at0(r1, c1) != at0(r1, c2))
                        return Intercalate{r1 + 1, r2 + 1, c1 + 1, c2 + 1};
    return std::nullopt;
}

LatinSquare read_square(std::istream& in) {
    int n = 0;
    if (!(in >> n))
        throw ParseError("expected the order on the first line");
    if (n < 1)
        throw ParseError("order must be at least 1");
    if (n > kMaxOrder)
        throw ParseError("order " + std::to_string(n) + " is too large (limit " +
                         std::to_string(kMaxOrder) + ")");
    std::vector<std::vector<int>> grid(static_cast<std::size_t>(n),
                                       std::vector<int>(static_cast<std::size_t>(n)));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (!(in >> grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]))
                throw ParseError("expected " + std::to_string(n * n) + " entries after the order");
        }
    }
    return LatinSquare::from_grid(grid);
}

void write_square(std::ostream& out, const LatinSquare& square) {
    const int n = square.order();
    out << n << '\n';
    const auto& cells = square.cells();
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (c > 0)
                out << ' ';
            out << cells[static_cast<std::size_t>(r) * n + c];
        }
        out << '\n';
    }
}

} // namespace latdom
