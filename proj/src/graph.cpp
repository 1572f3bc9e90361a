#include "latdom/graph.hpp"

#include <bit>
#include <stdexcept>

namespace latdom {

VertexSet::VertexSet(int order) : n_(order) {
    if (order < 1)
        throw std::invalid_argument("vertex set order must be at least 1");
    words_.assign((static_cast<std::size_t>(order) * order + 63) / 64, 0);
}

void VertexSet::require_index(int index) const {
    if (index < 0 || index >= universe_size())
        throw std::out_of_range("vertex index " + std::to_string(index) +
                                " is outside 0.." + std::to_string(universe_size() - 1));
}

void VertexSet::require_same_order(const VertexSet& other) const {
    if (n_ != other.n_)
        throw DimensionMismatchError("vertex sets have different orders (" + std::to_string(n_) +
                                     " vs " + std::to_string(other.n_) + ")");
}

bool VertexSet::test(int index) const {
    require_index(index);
    return (words_[static_cast<std::size_t>(index) >> 6] >> (index & 63)) & 1;
}

void VertexSet::set(int index) {
    require_index(index);
    words_[static_cast<std::size_t>(index) >> 6] |= std::uint64_t{1} << (index & 63);
}

void VertexSet::reset(int index) {
    require_index(index);
    words_[static_cast<std::size_t>(index) >> 6] &= ~(std::uint64_t{1} << (index & 63));
}

bool VertexSet::contains(int r, int c) const {
    if (r < 1 || r > n_ || c < 1 || c > n_)
        throw std::out_of_range("cell (" + std::to_string(r) + "," + std::to_string(c) +
                                ") is outside an order-" + std::to_string(n_) + " square");
    return test((r - 1) * n_ + (c - 1));
}

void VertexSet::add(int r, int c) {
    if (r < 1 || r > n_ || c < 1 || c > n_)
        throw std::out_of_range("cell (" + std::to_string(r) + "," + std::to_string(c) +
                                ") is outside an order-" + std::to_string(n_) + " square");
    set((r - 1) * n_ + (c - 1));
}

void VertexSet::remove(int r, int c) {
    if (r < 1 || r > n_ || c < 1 || c > n_)
        throw std::out_of_range("cell (" + std::to_string(r) + "," + std::to_string(c) +
                                ") is outside an order-" + std::to_string(n_) + " square");
    reset((r - 1) * n_ + (c - 1));
}

int VertexSet::count() const noexcept {
    int total = 0;
    for (std::uint64_t w : words_)
        total += std::popcount(w);
    return total;
}

bool VertexSet::empty() const noexcept {
    for (std::uint64_t w : words_)
        if (w)
            return false;
    return true;
}

int VertexSet::intersection_count(const VertexSet& other) const {
    require_same_order(other);
    int total = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
        total += std::popcount(words_[i] & other.words_[i]);
    return total;
}

bool VertexSet::intersects(const VertexSet& other) const {
    require_same_order(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & other.words_[i])
            return true;
    return false;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
    require_same_order(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i])
            return false;
    return true;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
    require_same_order(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] |= other.words_[i];
    return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
    require_same_order(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= other.words_[i];
    return *this;
}

std::vector<int> VertexSet::indices() const {
    std::vector<int> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits) {
            const int b = std::countr_zero(bits);
            out.push_back(static_cast<int>(w * 64) + b);
            bits &= bits - 1;
        }
    }
    return out;
}

std::vector<CellTriple> VertexSet::cells(const LatinSquare& square) const {
    if (square.order() != n_)
        throw DimensionMismatchError("square order " + std::to_string(square.order()) +
                                     " does not match vertex set order " + std::to_string(n_));
    std::vector<CellTriple> out;
    for (int idx : indices()) {
        const int r = idx / n_ + 1;
        const int c = idx % n_ + 1;
        out.push_back(square.triple(r, c));
    }
    return out;
}

LatinSquareGraph::LatinSquareGraph(LatinSquare square) : square_(std::move(square)) {
    const int n = square_.order();
    const int v = n * n;
    neighbors_.assign(static_cast<std::size_t>(v), VertexSet(n));
    const auto& cells = square_.cells();
    for (int a = 0; a < v; ++a) {
        const int ra = a / n, ca = a % n, sa = cells[static_cast<std::size_t>(a)];
        for (int b = a + 1; b < v; ++b) {
            const int rb = b / n, cb = b % n, sb = cells[static_cast<std::size_t>(b)];
            if (ra == rb || ca == cb || sa == sb) {
                neighbors_[static_cast<std::size_t>(a)].set(b);
                neighbors_[static_cast<std::size_t>(b)].set(a);
            }
        }
    }
}

std::size_t LatinSquareGraph::edge_count() const noexcept {
    return static_cast<std::size_t>(vertex_count()) * static_cast<std::size_t>(degree()) / 2;
}

int LatinSquareGraph::index_of(int r, int c) const {
    const int n = order();
    if (r < 1 || r > n || c < 1 || c > n)
        throw std::out_of_range("cell (" + std::to_string(r) + "," + std::to_string(c) +
                                ") is outside an order-" + std::to_string(n) + " square");
    return (r - 1) * n + (c - 1);
}

int LatinSquareGraph::index_of(const CellTriple& t) const {
    const int idx = index_of(t.r, t.c);
    const int actual = square_.at(t.r, t.c);
    if (t.s != actual)
        throw std::invalid_argument("cell (" + std::to_string(t.r) + "," + std::to_string(t.c) +
                                    ") holds symbol " + std::to_string(actual) + ", not " +
                                    std::to_string(t.s));
    return idx;
}

CellTriple LatinSquareGraph::triple_of(int index) const {
    const int n = order();
    if (index < 0 || index >= vertex_count())
        throw std::out_of_range("vertex index " + std::to_string(index) + " is outside 0.." +
                                std::to_string(vertex_count() - 1));
    return square_.triple(index / n + 1, index % n + 1);
}

bool LatinSquareGraph::adjacent(const CellTriple& u, const CellTriple& v) const {
    index_of(u);
    index_of(v);
    if (u == v)
        throw SameVertexError("adjacency needs two distinct vertices, got " + to_string(u) + " twice");
    return u.r == v.r || u.c == v.c || u.s == v.s;
}

bool LatinSquareGraph::adjacent_indices(int u, int v) const {
    if (u == v)
        throw SameVertexError("adjacency needs two distinct vertices, got index " +
                              std::to_string(u) + " twice");
    return neighbors(u).test(v);
}

const VertexSet& LatinSquareGraph::neighbors(int index) const {
    if (index < 0 || index >= vertex_count())
        throw std::out_of_range("vertex index " + std::to_string(index) + " is outside 0.." +
                                std::to_string(vertex_count() - 1));
    return neighbors_[static_cast<std::size_t>(index)];
}

const VertexSet& LatinSquareGraph::neighbors(const CellTriple& t) const {
    return neighbors_[static_cast<std::size_t>(index_of(t))];
}

int LatinSquareGraph::common_neighbor_count(const CellTriple& u, const CellTriple& v) const {
    const int iu = index_of(u);
    const int iv = index_of(v);
    if (iu == iv)
        throw SameVertexError("common neighbors need two distinct vertices, got " + to_string(u) +
                              " twice");
    return neighbors_[static_cast<std::size_t>(iu)].intersection_count(
        neighbors_[static_cast<std::size_t>(iv)]);
}

std::vector<int> LatinSquareGraph::vertex_map_under_isotopy(const Isotopy& iso) const {
    const int n = order();
    if (iso.order() != n)
        throw DimensionMismatchError("isotopy acts on " + std::to_string(iso.order()) +
                                     " elements but the graph has order " + std::to_string(n));
    std::vector<int> map(static_cast<std::size_t>(vertex_count()));
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c)
            map[static_cast<std::size_t>((r - 1) * n + (c - 1))] =
                (iso.row(r) - 1) * n + (iso.col(c) - 1);
    return map;
}

} // namespace latdom
