#include "tricluster/opoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace tricluster {

ComplexInterval IntervalPolynomial::evaluate(const ComplexInterval& z) const {
    if (coeffs.empty()) return ComplexInterval::point(Dyadic());
    ComplexInterval acc = coeffs.back();
    for (size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * z + coeffs[i];
    return acc;
}

Dyadic IntervalPolynomial::norm_upper() const {
    Dyadic best;
    for (const ComplexInterval& c : coeffs) {
        Dyadic u = c.abs_upper();
        if (u > best) best = u;
    }
    return best;
}

IntervalPolynomial IntervalPolynomial::coarsen(size_t max_bits) const {
    IntervalPolynomial g;
    g.coeffs.reserve(coeffs.size());
    for (const ComplexInterval& c : coeffs) g.coeffs.push_back(c.coarsen(max_bits));
    return g;
}

IntervalPolynomial taylor_shift(const IntervalPolynomial& f, const ComplexInterval& c,
                                const Dyadic& r) {
    if (r.sign() <= 0) throw std::invalid_argument("taylor_shift: radius must be positive");
    int d = f.degree();
    if (d < 0) return f;
    // Horner shift: repeated synthetic division by (z - c).
    std::vector<ComplexInterval> a = f.coeffs;
    for (int i = 0; i <= d; ++i)
        for (int j = d - 1; j >= i; --j) a[j] = a[j] + c * a[j + 1];
    // Scale z -> r z: coefficient i times r^i (exact dyadic powers).
    Dyadic rp(1);
    for (int i = 1; i <= d; ++i) {
        rp *= r;
        a[i] = a[i].scale(rp);
    }
    return IntervalPolynomial(std::move(a));
}

IntervalPolynomial graeffe(const IntervalPolynomial& f) {
    int d = f.degree();
    if (d < 1) throw std::invalid_argument("graeffe: degree must be >= 1");
    // f(z) = E(z^2) + z O(z^2)
    std::vector<ComplexInterval> even, odd;
    for (int i = 0; i <= d; ++i)
        (i % 2 == 0 ? even : odd).push_back(f.coeffs[i]);

    auto square = [](const std::vector<ComplexInterval>& p) {
        std::vector<ComplexInterval> q(p.empty() ? 0 : 2 * p.size() - 1,
                                       ComplexInterval::point(Dyadic()));
        for (size_t i = 0; i < p.size(); ++i)
            for (size_t j = 0; j < p.size(); ++j) q[i + j] = q[i + j] + p[i] * p[j];
        return q;
    };

    std::vector<ComplexInterval> e2 = square(even), o2 = square(odd);
    // g = (-1)^d (E(x)^2 - x O(x)^2)
    std::vector<ComplexInterval> g(static_cast<size_t>(d) + 1, ComplexInterval::point(Dyadic()));
    for (size_t i = 0; i < e2.size(); ++i) g[i] = e2[i];
    for (size_t i = 0; i < o2.size(); ++i) g[i + 1] = g[i + 1] - o2[i];
    if (d % 2 != 0)
        for (ComplexInterval& c : g) c = -c;
    return IntervalPolynomial(std::move(g));
}

// ---------------------------------------------------------------------------
// OraclePolynomial

void OraclePolynomial::add_term(const Exponent& e, const OracleNumber& c) {
    if (static_cast<int>(e.size()) != arity_)
        throw std::invalid_argument("exponent vector arity mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end())
        terms_.emplace(e, c);
    else
        it->second = it->second + c;
}

unsigned OraclePolynomial::degree_in(int i) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<size_t>(i)]);
    return d;
}

std::vector<unsigned> OraclePolynomial::degree_sequence() const {
    std::vector<unsigned> d(static_cast<size_t>(arity_), 0);
    for (const auto& [e, c] : terms_)
        for (int i = 0; i < arity_; ++i)
            d[static_cast<size_t>(i)] = std::max(d[static_cast<size_t>(i)], e[static_cast<size_t>(i)]);
    return d;
}

unsigned OraclePolynomial::max_degree() const {
    unsigned d = 0;
    for (unsigned x : degree_sequence()) d = std::max(d, x);
    return d;
}

Dyadic OraclePolynomial::norm_upper(long L) const {
    Dyadic best;
    for (const auto& [e, c] : terms_) {
        Dyadic u = c.query(L).to_interval().abs_upper();
        if (u > best) best = u;
    }
    return best;
}

IntervalPolynomial OraclePolynomial::approximate(long L) const {
    if (arity_ != 1) throw std::invalid_argument("approximate: arity must be 1");
    unsigned d = degree_in(0);
    std::vector<ComplexInterval> c(d + 1, ComplexInterval::point(Dyadic()));
    for (const auto& [e, coef] : terms_) c[e[0]] = coef.query(L + 1).to_interval();
    return IntervalPolynomial(std::move(c));
}

namespace {

// Recursive Horner over the prefix variables: evaluates the k-variate
// coefficient polynomial on interval enclosures of the prefix discs.
struct PrefixTerm {
    std::vector<unsigned> exp;
    const OracleNumber* coef;
};

ComplexInterval eval_prefix(std::vector<PrefixTerm>& terms, size_t lo, size_t hi, int var,
                            const std::vector<ComplexInterval>& point, long L, size_t max_bits) {
    if (var < 0) {
        ComplexInterval acc = terms[lo].coef->query(L).to_interval();
        for (size_t t = lo + 1; t < hi; ++t)
            acc = acc + terms[t].coef->query(L).to_interval();
        return acc;
    }
    size_t uvar = static_cast<size_t>(var);
    // Group by descending exponent of `var` (terms arrive sorted that way).
    struct Group {
        unsigned e;
        ComplexInterval value;
    };
    std::vector<Group> groups;
    size_t i = lo;
    while (i < hi) {
        size_t j = i;
        unsigned e = terms[i].exp[uvar];
        while (j < hi && terms[j].exp[uvar] == e) ++j;
        groups.push_back({e, eval_prefix(terms, i, j, var - 1, point, L, max_bits)});
        i = j;
    }
    // Horner across exponent gaps.
    const ComplexInterval& z = point[uvar];
    ComplexInterval acc = groups.front().value;
    unsigned prev = groups.front().e;
    for (size_t g = 1; g < groups.size(); ++g) {
        for (unsigned s = groups[g].e; s < prev; ++s) acc = (acc * z).coarsen(max_bits);
        acc = acc + groups[g].value;
        prev = groups[g].e;
    }
    for (unsigned s = 0; s < prev; ++s) acc = (acc * z).coarsen(max_bits);
    return acc;
}

}  // namespace

IntervalPolynomial OraclePolynomial::specialize_interval(const PolyDisc& prefix, long L) const {
    int k = static_cast<int>(prefix.size());
    if (k + 1 != arity_)
        throw std::invalid_argument("specialize_interval: polydisc must cover all but one variable");
    std::vector<ComplexInterval> point;
    point.reserve(prefix.size());
    for (const Disc& d : prefix) point.push_back(d.enclosure());

    unsigned dlast = degree_in(arity_ - 1);
    size_t max_bits = static_cast<size_t>(L > 0 ? L : 0) + 64;
    std::vector<ComplexInterval> out(dlast + 1, ComplexInterval::point(Dyadic()));

    // Split the support by the exponent of the last variable; sort prefix
    // exponents with the highest variable most significant, descending, so
    // eval_prefix can group in one pass.
    std::vector<std::vector<PrefixTerm>> buckets(dlast + 1);
    for (const auto& [e, coef] : terms_) {
        PrefixTerm t;
        t.exp.assign(e.begin(), e.end() - 1);
        t.coef = &coef;
        buckets[e.back()].push_back(std::move(t));
    }
    for (unsigned j = 0; j <= dlast; ++j) {
        if (buckets[j].empty()) continue;
        std::sort(buckets[j].begin(), buckets[j].end(),
                  [](const PrefixTerm& a, const PrefixTerm& b) {
                      for (size_t v = a.exp.size(); v-- > 0;)
                          if (a.exp[v] != b.exp[v]) return a.exp[v] > b.exp[v];
                      return false;
                  });
        out[j] = eval_prefix(buckets[j], 0, buckets[j].size(), k - 1, point, L, max_bits);
    }
    return IntervalPolynomial(std::move(out));
}

// ---------------------------------------------------------------------------
// TriangularSystem

TriangularSystem::TriangularSystem(std::vector<OraclePolynomial> polys) : polys_(std::move(polys)) {
    for (size_t i = 0; i < polys_.size(); ++i) {
        if (polys_[i].arity() != static_cast<int>(i) + 1)
            throw std::invalid_argument("triangular system: f_i must have arity i");
        if (polys_[i].degree_in(static_cast<int>(i)) < 1)
            throw std::invalid_argument("triangular system: deg_{z_i}(f_i) must be >= 1");
    }
}

}  // namespace tricluster
