#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "latdom/latin.hpp"

namespace latdom {

/// An operation got the same vertex twice where two distinct vertices
/// are required.
class SameVertexError : public Error {
public:
    explicit SameVertexError(const std::string& what) : Error(what) {}
};

/// Subset of the n^2 cells of an order-n latin square, stored as a bit
/// mask. Cell (r, c) lives at index (r-1)*n + (c-1), row-major.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int order);

    int order() const noexcept { return n_; }
    int universe_size() const noexcept { return n_ * n_; }

    bool test(int index) const;
    void set(int index);
    void reset(int index);

    bool contains(int r, int c) const;
    void add(int r, int c);
    void remove(int r, int c);

    int count() const noexcept;
    bool empty() const noexcept;

    int intersection_count(const VertexSet& other) const;
    bool intersects(const VertexSet& other) const;
    bool is_subset_of(const VertexSet& other) const;

    VertexSet& operator|=(const VertexSet& other);
    VertexSet& operator&=(const VertexSet& other);

    /// Member indices in ascending order.
    std::vector<int> indices() const;

    /// Member cells as full triples, ascending by (r, c). The square
    /// supplies the symbols and must have the same order.
    std::vector<CellTriple> cells(const LatinSquare& square) const;

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    void require_same_order(const VertexSet& other) const;
    void require_index(int index) const;

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Graph on the n^2 cells of a latin square. Two distinct cells are
/// adjacent exactly when they share a row, a column or a symbol, so the
/// graph is 3(n-1)-regular. Neighborhoods are precomputed as bit masks.
class LatinSquareGraph {
public:
    explicit LatinSquareGraph(LatinSquare square);

    const LatinSquare& square() const noexcept { return square_; }
    int order() const noexcept { return square_.order(); }
    int vertex_count() const noexcept { return order() * order(); }
    int degree() const noexcept { return 3 * (order() - 1); }
    std::size_t edge_count() const noexcept;

    int index_of(int r, int c) const;

    /// Index of a full triple; the symbol must match the square.
    int index_of(const CellTriple& t) const;

    CellTriple triple_of(int index) const;

    /// Adjacency decided from the two triples alone in O(1). Throws
    /// SameVertexError when u == v.
    bool adjacent(const CellTriple& u, const CellTriple& v) const;
    bool adjacent_indices(int u, int v) const;

    const VertexSet& neighbors(int index) const;
    const VertexSet& neighbors(const CellTriple& t) const;

    int common_neighbor_count(const CellTriple& u, const CellTriple& v) const;

    /// Vertex bijection induced by an isotopy of the defining square:
    /// cell (r, c) goes to (row(r), col(c)). Returns map with
    /// map[old index] = new index. This is a graph isomorphism from
    /// this graph to the graph of apply_isotopy(square, iso).
    std::vector<int> vertex_map_under_isotopy(const Isotopy& iso) const;

private:
    LatinSquare square_;
    std::vector<VertexSet> neighbors_;
};

} // namespace latdom
