#include "latdom/bounds.hpp"

#include <algorithm>

namespace latdom {

namespace {

int ceil_div(int a, int b) {
    return (a + b - 1) / b;
}

std::string fm(int n) {
    return std::to_string(n);
}

void note(BoundsReport& rep, const std::string& label, const std::string& formula) {
    rep.sources.push_back(TheoremSource{label, formula});
}

void raise_lower(BoundsReport& rep, int value, const std::string& label) {
    if (value > rep.lower.value)
        rep.lower = Bound{value, label};
}

void lower_upper(BoundsReport& rep, int value, const std::string& label) {
    if (value < rep.upper.value)
        rep.upper = Bound{value, label};
}

} // namespace

StructureInfo detect_structure(const LatinSquare& square) {
    const int n = square.order();
    if (square == LatinSquare::cyclic(n))
        return StructureInfo::cyclic();
    for (int q = 2; q < n; ++q) {
        if (n % q != 0)
            continue;
        const int m = n / q;
        if (m >= 2 && square == LatinSquare::q_step(q, m))
            return StructureInfo::q_step(q, m);
    }
    return StructureInfo::general();
}

BoundsReport gamma_bounds(int n, const StructureInfo& structure) {
    if (n < 2)
        throw std::invalid_argument("domination bounds need order at least 2");

    BoundsReport rep;
    rep.n = n;
    rep.mode = DominationMode::dominating();

    if (n <= 4) {
        const std::string label = "small-order value gamma = n-1 (2 <= n <= 4)";
        rep.exact = Bound{n - 1, label};
        rep.lower = Bound{n - 1, label};
        rep.upper = Bound{n - 1, label};
        note(rep, label, "n-1 = " + fm(n - 1));
    } else {
        const int low = ceil_div(n - 1, 2);
        rep.lower = Bound{low, "neighborhood counting lower bound (n-1)/2"};
        note(rep, rep.lower.source, "ceil((n-1)/2) = ceil(" + fm(n - 1) + "/2) = " + fm(low));
        rep.upper = Bound{n - 2, "two-column elimination upper bound n-2 (n >= 5)"};
        note(rep, rep.upper.source, "n-2 = " + fm(n - 2));
        if (n == 5) {
            const std::string label = "order-5 value gamma = 3";
            rep.exact = Bound{3, label};
            note(rep, label, "3");
        }
    }

    if (structure.kind == SquareStructure::Cyclic && n >= 3) {
        const int f = n / 3;
        const int g = n % 3;
        const int cand = 2 * f + g;
        note(rep, "cyclic diagonal-band construction 2f+g",
             "2f+g = 2*" + fm(f) + "+" + fm(g) + " = " + fm(cand) + " (n = 3f+g)");
        lower_upper(rep, cand, "cyclic diagonal-band construction 2f+g");
    }

    if (!rep.exact && rep.lower.value == rep.upper.value)
        rep.exact = Bound{rep.lower.value, "bounds meet"};
    return rep;
}

BoundsReport ktds_bounds(int n, int k, const StructureInfo& structure) {
    if (n < 2)
        throw std::invalid_argument("k-tuple bounds need order at least 2");
    if (k < 1)
        throw std::invalid_argument("k must be at least 1");
    if (k > max_feasible_k(n))
        throw InfeasibleError("k = " + fm(k) + " exceeds 3(n-1) = " + fm(max_feasible_k(n)) +
                              " at order " + fm(n));

    BoundsReport rep;
    rep.n = n;
    rep.mode = DominationMode::ktuple_total(k);

    rep.lower = Bound{k + 1, "every member needs k selected neighbors, so size >= k+1"};
    note(rep, rep.lower.source, "k+1 = " + fm(k + 1));
    if (k == 1) {
        const int low = ceil_div(4 * n - 2, 7);
        note(rep, "1-tuple total lower bound (4n-2)/7",
             "ceil((4n-2)/7) = ceil(" + fm(4 * n - 2) + "/7) = " + fm(low));
        raise_lower(rep, low, "1-tuple total lower bound (4n-2)/7");
    }
    {
        const BoundsReport gamma = gamma_bounds(n, structure);
        const int glow = gamma.exact ? gamma.exact->value : gamma.lower.value;
        note(rep, "domination number is a lower bound for every k-tuple total value",
             "gamma >= " + fm(glow));
        raise_lower(rep, glow, "domination number is a lower bound for every k-tuple total value");
    }

    if (n == 2) {
        // Order 2 sits below every formula; the graph is K4.
        const std::string label = "order-2 values (graph is K4)";
        const int value = k + 1;
        rep.upper = Bound{value, label};
        rep.exact = Bound{value, label};
        note(rep, label, "k+1 = " + fm(value));
        return rep;
    }

    if (k == 1) {
        rep.upper = Bound{n - 1, "symbol-row construction, k = 1"};
        note(rep, rep.upper.source, "n-1 = " + fm(n - 1));
    } else if (k % 2 == 0) {
        const int a = k / 2;
        if (a <= n) {
            rep.upper = Bound{a * n, "symbol-class construction, k = 2a"};
            note(rep, rep.upper.source, "a*n = " + fm(a) + "*" + fm(n) + " = " + fm(a * n));
        } else {
            rep.upper = Bound{n * n, "whole vertex set"};
            note(rep, rep.upper.source, "n^2 = " + fm(n * n));
        }
    } else {
        const int a = (k - 1) / 2;
        if (a <= n - 2) {
            rep.upper = Bound{a * n + n - a, "symbol-class plus partial-row construction, k = 2a+1"};
            note(rep, rep.upper.source,
                 "a*n+n-a = " + fm(a) + "*" + fm(n) + "+" + fm(n) + "-" + fm(a) + " = " +
                     fm(a * n + n - a));
        } else {
            rep.upper = Bound{n * n, "whole vertex set"};
            note(rep, rep.upper.source, "n^2 = " + fm(n * n));
        }
    }

    if (structure.kind == SquareStructure::QStep && k == 1 && structure.q >= 1 &&
        structure.m >= 1 && structure.q * structure.m == n) {
        if (structure.m >= structure.q + 1) {
            note(rep, "q-step block construction, m >= q+1", "n-q = " + fm(n - structure.q));
            lower_upper(rep, n - structure.q, "q-step block construction, m >= q+1");
        } else {
            note(rep, "q-step block construction, m <= q", "n-m+1 = " + fm(n - structure.m + 1));
            lower_upper(rep, n - structure.m + 1, "q-step block construction, m <= q");
        }
    }

    if (k == max_feasible_k(n)) {
        rep.exact = Bound{n * n, "demand equals the full open neighborhood, so only n^2 works"};
        note(rep, rep.exact->source, "n^2 = " + fm(n * n));
    } else if (k == 2) {
        rep.exact = Bound{n, "2-tuple total value is exactly n (n >= 3)"};
        note(rep, rep.exact->source, "n = " + fm(n));
    } else if (n == 3 && k == 1) {
        rep.exact = Bound{2, "order-3 value for k = 1"};
        note(rep, rep.exact->source, "2");
    }

    if (!rep.exact && rep.lower.value == rep.upper.value)
        rep.exact = Bound{rep.lower.value, "bounds meet"};

    if (rep.lower.value > rep.upper.value)
        throw std::logic_error("bound formulas crossed at n = " + fm(n) + ", k = " + fm(k));
    return rep;
}

ConsistencyResult consistency_check(const BoundsReport& report, const DominationCertificate& cert) {
    if (cert.square.order() != report.n)
        throw MismatchError("certificate order " + std::to_string(cert.square.order()) +
                            " differs from report order " + std::to_string(report.n));
    if (!(cert.mode == report.mode))
        throw MismatchError("certificate and report describe different modes");

    std::vector<std::string> problems;
    if (cert.size < report.lower.value)
        problems.push_back("size " + std::to_string(cert.size) + " is below the lower bound " +
                           std::to_string(report.lower.value) + " [" + report.lower.source + "]");
    if (cert.optimal) {
        if (cert.size > report.upper.value)
            problems.push_back("optimal size " + std::to_string(cert.size) +
                               " is above the upper bound " + std::to_string(report.upper.value) +
                               " [" + report.upper.source + "]");
        if (report.exact && cert.size != report.exact->value)
            problems.push_back("optimal size " + std::to_string(cert.size) +
                               " contradicts the established value " +
                               std::to_string(report.exact->value) + " [" + report.exact->source +
                               "]");
    }

    if (problems.empty())
        return ConsistencyResult{true, "certificate agrees with every applicable bound"};
    std::string msg;
    for (std::size_t i = 0; i < problems.size(); ++i) {
        if (i)
            msg += "; ";
        msg += problems[i];
    }
    return ConsistencyResult{false, msg};
}

} // namespace latdom
