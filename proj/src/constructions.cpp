#include "latdom/constructions.hpp"

#include <algorithm>
#include <utility>

namespace latdom {

namespace {

// Permutation of 1..n sending `first` to t1, `second` to t2 and the
// remaining values onto the remaining targets in ascending order.
std::vector<int> pinned_permutation(int n, int first, int second, int t1, int t2) {
    std::vector<int> rest;
    rest.reserve(static_cast<std::size_t>(n) - 2);
    for (int t = 1; t <= n; ++t)
        if (t != t1 && t != t2)
            rest.push_back(t);
    std::vector<int> out(static_cast<std::size_t>(n));
    std::size_t next = 0;
    for (int i = 1; i <= n; ++i) {
        if (i == first)
            out[static_cast<std::size_t>(i - 1)] = t1;
        else if (i == second)
            out[static_cast<std::size_t>(i - 1)] = t2;
        else
            out[static_cast<std::size_t>(i - 1)] = rest[next++];
    }
    return out;
}

std::vector<int> identity_permutation(int n) {
    std::vector<int> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = i + 1;
    return out;
}

} // namespace

VertexSet ktds_construction(const LatinSquare& square, int k) {
    const int n = square.order();
    if (n < 3)
        throw OrderTooSmallError("the k-tuple construction needs order at least 3, got " +
                                 std::to_string(n));
    if (k < 1)
        throw std::invalid_argument("k must be at least 1");
    if (k > max_feasible_k(n))
        throw InfeasibleError("k = " + std::to_string(k) + " exceeds 3(n-1) = " +
                              std::to_string(max_feasible_k(n)) + " at order " + std::to_string(n));

    VertexSet s(n);
    if (k == 1) {
        for (int c = 1; c < n; ++c)
            s.add(1, c);
        return s;
    }
    if (k % 2 == 0) {
        const int a = k / 2;
        if (a <= n) {
            for (int r = 1; r <= n; ++r)
                for (int c = 1; c <= n; ++c)
                    if (square.at(r, c) <= a)
                        s.add(r, c);
            return s;
        }
    } else {
        const int a = (k - 1) / 2;
        if (a <= n - 2) {
            for (int r = 1; r <= n; ++r)
                for (int c = 1; c <= n; ++c)
                    if (square.at(r, c) <= a)
                        s.add(r, c);
            for (int c = 1; c <= n; ++c)
                if (square.at(1, c) > a)
                    s.add(1, c);
            return s;
        }
    }
    // The formulas stop short of the largest demands; there the whole
    // vertex set still works since every vertex sees all 3(n-1) others.
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c)
            s.add(r, c);
    return s;
}

VertexSet qstep_1tds_construction(int q, int m, const LatinSquare& square) {
    if (q < 1 || m < 1)
        throw std::invalid_argument("q and m must be at least 1");
    const int n = q * m;
    if (square.order() != n)
        throw NotCanonicalQStepError("square has order " + std::to_string(square.order()) +
                                     " but q*m = " + std::to_string(n));
    if (n < 3)
        throw OrderTooSmallError("the q-step construction needs order at least 3, got " +
                                 std::to_string(n));
    if (square != LatinSquare::q_step(q, m))
        throw NotCanonicalQStepError("square is not the canonical q-step square for q = " +
                                     std::to_string(q) + ", m = " + std::to_string(m));

    VertexSet s(n);
    if (m >= q + 1) {
        // One full block-row run plus a tail along row 1: n - q cells.
        for (int r = 1; r <= q; ++r)
            for (int c = (r - 1) * q + 1; c <= r * q; ++c)
                s.add(r, c);
        for (int c = q * q + 1; c <= n - q; ++c)
            s.add(1, c);
    } else {
        // m <= q: n - m + 1 cells, the last column picks up rows m..q.
        for (int r = 1; r <= m - 1; ++r)
            for (int c = (r - 1) * q + 1; c <= r * q; ++c)
                s.add(r, c);
        for (int r = m; r <= q; ++r)
            s.add(r, (m - 1) * q);
    }
    return s;
}

VertexSet cyclic_domination_construction(int n) {
    if (n < 3)
        throw OrderTooSmallError("the cyclic construction needs order at least 3, got " +
                                 std::to_string(n));
    const int f = n / 3;
    const int g = n % 3;
    VertexSet s(n);
    for (int i = 1; i <= f - 1; ++i)
        s.add(2 * f + i, i + 1);
    s.add(3 * f, 1);
    for (int i = 1; i <= f; ++i)
        s.add(i, 2 * f + i);
    for (int i = 1; i <= g; ++i)
        s.add(3 * f + i, 3 * f + i);
    return s;
}

GeneralDomination general_domination_construction(const LatinSquare& square) {
    const int n = square.order();
    if (n < 6)
        throw OrderTooSmallError("the general construction needs order at least 6, got " +
                                 std::to_string(n));
    const int m = n - 2;

    // Where symbol 1 sits, one cell per row.
    std::vector<std::pair<int, int>> ones;
    ones.reserve(static_cast<std::size_t>(n));
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c)
            if (square.at(r, c) == 1)
                ones.emplace_back(r, c);

    const auto syms = identity_permutation(n);

    for (std::size_t i = 0; i < ones.size(); ++i) {
        for (std::size_t j = 0; j < ones.size(); ++j) {
            if (i == j)
                continue;
            // Send one 1-cell to (n-1, n) and the other to (n, n-1) so
            // the bottom-right corner reads [[a, 1], [1, b]].
            Isotopy iso(pinned_permutation(n, ones[i].first, ones[j].first, n - 1, n),
                        pinned_permutation(n, ones[i].second, ones[j].second, n, n - 1), syms);
            const LatinSquare normalized = apply_isotopy(square, iso);
            const LatinSquareGraph graph(normalized);
            const int a = normalized.at(n - 1, n - 1);
            const int b = normalized.at(n, n);

            std::vector<std::pair<int, int>> a_cells, b_cells, one_cells;
            for (int r = 1; r <= m; ++r) {
                for (int c = 1; c <= m; ++c) {
                    const int sym = normalized.at(r, c);
                    if (sym == a)
                        a_cells.emplace_back(r, c);
                    if (sym == b)
                        b_cells.emplace_back(r, c);
                    if (sym == 1)
                        one_cells.emplace_back(r, c);
                }
            }

            for (const auto& [r1, c1] : a_cells) {
                for (const auto& [r2, c2] : b_cells) {
                    if (r2 == r1 || c2 == c1)
                        continue;
                    for (const auto& [r3, c3] : one_cells) {
                        if (r3 == r1 || r3 == r2 || c3 == c1 || c3 == c2)
                            continue;
                        VertexSet chosen(n);
                        chosen.add(r1, c1);
                        chosen.add(r2, c2);
                        chosen.add(r3, c3);
                        std::vector<int> rows_left, cols_left;
                        for (int r = 1; r <= m; ++r)
                            if (r != r1 && r != r2 && r != r3)
                                rows_left.push_back(r);
                        for (int c = 1; c <= m; ++c)
                            if (c != c1 && c != c2 && c != c3)
                                cols_left.push_back(c);
                        for (std::size_t t = 0; t < rows_left.size(); ++t)
                            chosen.add(rows_left[t], cols_left[t]);

                        if (!verify(graph, chosen, DominationMode::dominating()).ok())
                            continue;

                        const Isotopy inv = iso.inverse();
                        VertexSet result(n);
                        for (int idx : chosen.indices()) {
                            const int r = idx / n + 1;
                            const int c = idx % n + 1;
                            result.add(inv.row(r), inv.col(c));
                        }
                        const LatinSquareGraph original_graph(square);
                        if (!verify(original_graph, result, DominationMode::dominating()).ok())
                            continue;
                        return GeneralDomination{std::move(result), iso};
                    }
                }
            }
        }
    }
    throw ConstructionFailedError("no normalization yielded a verified dominating set of size n - 2");
}

} // namespace latdom
