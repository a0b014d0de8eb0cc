#include "tricluster/refsolve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "tricluster/bounds.hpp"

namespace tricluster::refsolve {

namespace {
mpq_class qmin(const mpq_class& a, const mpq_class& b) { return a < b ? a : b; }
mpq_class qmax(const mpq_class& a, const mpq_class& b) { return a > b ? a : b; }
mpq_class qabs(const mpq_class& a) { return a < 0 ? mpq_class(-a) : a; }
}

QRect QRect::operator+(const QRect& o) const {
    return {xlo + o.xlo, xhi + o.xhi, ylo + o.ylo, yhi + o.yhi};
}

QRect QRect::operator-(const QRect& o) const {
    return {xlo - o.xhi, xhi - o.xlo, ylo - o.yhi, yhi - o.ylo};
}

namespace {
void range_mul(const mpq_class& l1, const mpq_class& h1, const mpq_class& l2, const mpq_class& h2,
               mpq_class& lo, mpq_class& hi) {
    mpq_class p1 = l1 * l2, p2 = l1 * h2, p3 = h1 * l2, p4 = h1 * h2;
    lo = qmin(qmin(p1, p2), qmin(p3, p4));
    hi = qmax(qmax(p1, p2), qmax(p3, p4));
}
}

QRect QRect::operator*(const QRect& o) const {
    mpq_class acl, ach, bdl, bdh, adl, adh, bcl, bch;
    range_mul(xlo, xhi, o.xlo, o.xhi, acl, ach);
    range_mul(ylo, yhi, o.ylo, o.yhi, bdl, bdh);
    range_mul(xlo, xhi, o.ylo, o.yhi, adl, adh);
    range_mul(ylo, yhi, o.xlo, o.xhi, bcl, bch);
    return {acl - bdh, ach - bdl, adl + bcl, adh + bch};
}

bool QRect::contains_zero() const { return xlo <= 0 && 0 <= xhi && ylo <= 0 && 0 <= yhi; }

mpq_class QRect::abs_lower() const {
    mpq_class dx = 0, dy = 0;
    if (xlo > 0) dx = xlo;
    else if (xhi < 0) dx = -xhi;
    if (ylo > 0) dy = ylo;
    else if (yhi < 0) dy = -yhi;
    return qmax(dx, dy);
}

mpq_class QRect::abs_upper() const {
    return qmax(qabs(xlo), qabs(xhi)) + qmax(qabs(ylo), qabs(yhi));
}

QPoly QPoly::from_points(const std::vector<std::pair<mpq_class, mpq_class>>& coeffs) {
    QPoly p;
    p.c.reserve(coeffs.size());
    for (const auto& [re, im] : coeffs) p.c.push_back(QRect::point(re, im));
    return p;
}

namespace {

QPoly shift_scale(const QPoly& f, const mpq_class& cx, const mpq_class& cy, const mpq_class& r) {
    int d = f.degree();
    std::vector<QRect> a = f.c;
    QRect center = QRect::point(cx, cy);
    for (int i = 0; i <= d; ++i)
        for (int j = d - 1; j >= i; --j) a[j] = a[j] + center * a[j + 1];
    mpq_class rp = 1;
    QRect scale;
    for (int i = 1; i <= d; ++i) {
        rp *= r;
        QRect m = QRect::point(rp, 0);
        a[i] = a[i] * m;
    }
    return QPoly{std::move(a)};
}

QPoly graeffe_step(const QPoly& f) {
    int d = f.degree();
    std::vector<QRect> even, odd;
    for (int i = 0; i <= d; ++i) (i % 2 == 0 ? even : odd).push_back(f.c[i]);
    auto square = [](const std::vector<QRect>& p) {
        std::vector<QRect> q(p.empty() ? 0 : 2 * p.size() - 1, QRect::point(0, 0));
        for (size_t i = 0; i < p.size(); ++i)
            for (size_t j = 0; j < p.size(); ++j) q[i + j] = q[i + j] + p[i] * p[j];
        return q;
    };
    std::vector<QRect> e2 = square(even), o2 = square(odd);
    std::vector<QRect> g(static_cast<size_t>(d) + 1, QRect::point(0, 0));
    for (size_t i = 0; i < e2.size() && i < g.size(); ++i) g[i] = e2[i];
    for (size_t i = 0; i + 1 < g.size() + 1 && i < o2.size(); ++i)
        if (i + 1 <= static_cast<size_t>(d)) g[i + 1] = g[i + 1] - o2[i];
    if (d % 2 != 0) {
        QRect minus_one = QRect::point(-1, 0);
        for (QRect& x : g) x = x * minus_one;
    }
    return QPoly{std::move(g)};
}

// Rationals grow quadratically under Graeffe; rescale by an exact power of
// two and round endpoints outward to a fixed grid between steps. Rescaling
// leaves the dominance comparisons untouched.
mpq_class round_down(const mpq_class& x, long bits) {
    mpz_class num = x.get_num() << static_cast<unsigned long>(bits);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_class den = 1;
    den <<= static_cast<unsigned long>(bits);
    mpq_class r(q, den);
    r.canonicalize();
    return r;
}
mpq_class round_up(const mpq_class& x, long bits) { return -round_down(-x, bits); }

mpq_class pow2_q(long e) {
    mpz_class p = 1;
    p <<= static_cast<unsigned long>(e < 0 ? -e : e);
    return e >= 0 ? mpq_class(p) : mpq_class(1) / mpq_class(p);
}

long q_floor_log2(const mpq_class& x) {
    long num = static_cast<long>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2));
    long den = static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
    return num - den;  // within 1 of the true floor, good enough for scaling
}

QPoly normalize_coarsen(const QPoly& f, long bits) {
    mpq_class top = 0;
    for (const QRect& r : f.c) top = qmax(top, r.abs_upper());
    QPoly g;
    g.c.reserve(f.c.size());
    mpq_class s = top > 0 ? pow2_q(-q_floor_log2(top)) : mpq_class(1);
    for (const QRect& r : f.c) {
        QRect t{r.xlo * s, r.xhi * s, r.ylo * s, r.yhi * s};
        g.c.push_back({round_down(t.xlo, bits), round_up(t.xhi, bits), round_down(t.ylo, bits),
                       round_up(t.yhi, bits)});
    }
    return g;
}

}  // namespace

int pellet_count(const QPoly& f, const mpq_class& cx, const mpq_class& cy, const mpq_class& r) {
    int d = f.degree();
    if (d < 1) return -1;
    QPoly g = shift_scale(f, cx, cy, r);
    int rounds = 5 + static_cast<int>(std::ceil(std::log2(static_cast<double>(d) + 1.0)));
    for (int i = 0; i < rounds; ++i) g = normalize_coarsen(graeffe_step(g), 320);

    std::vector<mpq_class> lower(g.c.size()), upper(g.c.size());
    mpq_class sum_upper = 0;
    for (size_t k = 0; k < g.c.size(); ++k) {
        lower[k] = g.c[k].abs_lower();
        upper[k] = g.c[k].abs_upper();
        sum_upper += upper[k];
    }
    for (size_t k = 0; k < g.c.size(); ++k)
        if (lower[k] > sum_upper - upper[k]) return static_cast<int>(k);
    return -1;
}

int natural_count(const QPoly& f, const mpq_class& cx, const mpq_class& cy, const mpq_class& r) {
    int inner = pellet_count(f, cx, cy, r);
    if (inner < 0) return -1;
    int outer = pellet_count(f, cx, cy, 3 * r);
    return inner == outer ? inner : -1;
}

namespace {

struct RBox {
    mpq_class cx, cy, w;
};

bool rdisc_intersects_rdisc(const mpq_class& ax, const mpq_class& ay, const mpq_class& ar,
                            const mpq_class& bx, const mpq_class& by, const mpq_class& br) {
    mpq_class dx = ax - bx, dy = ay - by, s = ar + br;
    return dx * dx + dy * dy <= s * s;
}

bool rdisc_contains_box(const mpq_class& dx, const mpq_class& dy, const mpq_class& dr,
                        const RBox& b) {
    mpq_class h = b.w / 2, r2 = dr * dr;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1}) {
            mpq_class px = b.cx + (sx < 0 ? -h : h) - dx;
            mpq_class py = b.cy + (sy < 0 ? -h : h) - dy;
            if (px * px + py * py > r2) return false;
        }
    return true;
}

bool rdisc_intersects_box(const mpq_class& dx, const mpq_class& dy, const mpq_class& dr,
                          const RBox& b) {
    mpq_class h = b.w / 2;
    mpq_class ox = 0, oy = 0;
    if (dx < b.cx - h) ox = b.cx - h - dx;
    else if (dx > b.cx + h) ox = dx - b.cx - h;
    if (dy < b.cy - h) oy = b.cy - h - dy;
    else if (dy > b.cy + h) oy = dy - b.cy - h;
    return ox * ox + oy * oy <= dr * dr;
}

}  // namespace

namespace {

// 0 not in f(box rectangle) certifies the box root-free; far cheaper than a
// counting test and enough for exclusion.
bool excludes_zero(const QPoly& f, const RBox& b) {
    mpq_class h = b.w / 2;
    QRect z{b.cx - h, b.cx + h, b.cy - h, b.cy + h};
    QRect acc = f.c.back();
    for (size_t i = f.c.size() - 1; i-- > 0;) acc = acc * z + f.c[i];
    return !acc.contains_zero();
}

}  // namespace

std::vector<QCluster> isolate(const QPoly& f, const mpq_class& cx, const mpq_class& cy,
                              const mpq_class& w, const mpq_class& eps, int max_rounds) {
    std::vector<QCluster> out;
    std::vector<RBox> active{{cx, cy, w}};

    for (int round = 0; round < max_rounds && !active.empty(); ++round) {
        if (active.size() > 1024)
            throw OracleTooExpensive("reference isolation box count exploded");
        std::vector<RBox> keep;
        for (const RBox& b : active) {
            // Cheap rectangle evaluation first; a counting test for the
            // boxes it cannot settle (near multiple roots it never can).
            if (excludes_zero(f, b)) continue;
            if (pellet_count(f, b.cx, b.cy, 3 * b.w / 4) == 0) continue;
            keep.push_back(b);
        }
        // 8-connected grouping (equal widths).
        size_t n = keep.size();
        std::vector<size_t> parent(n);
        std::iota(parent.begin(), parent.end(), size_t{0});
        std::function<size_t(size_t)> find = [&](size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (qabs(keep[i].cx - keep[j].cx) <= keep[i].w &&
                    qabs(keep[i].cy - keep[j].cy) <= keep[i].w)
                    parent[find(i)] = find(j);
        std::map<size_t, std::vector<RBox>> comps;
        std::vector<size_t> comp_order;
        for (size_t i = 0; i < n; ++i) {
            size_t root = find(i);
            if (!comps.count(root)) comp_order.push_back(root);
            comps[root].push_back(keep[i]);
        }

        std::vector<RBox> next;
        std::vector<QCluster> emitted_now;
        for (size_t root : comp_order) {
            const std::vector<RBox>& comp = comps[root];
            mpq_class xlo = comp[0].cx, xhi = xlo, ylo = comp[0].cy, yhi = ylo;
            for (const RBox& b : comp) {
                xlo = qmin(xlo, b.cx); xhi = qmax(xhi, b.cx);
                ylo = qmin(ylo, b.cy); yhi = qmax(yhi, b.cy);
            }
            mpq_class bw = qmax(xhi - xlo, yhi - ylo) + comp[0].w;
            mpq_class dcx = (xlo + xhi) / 2, dcy = (ylo + yhi) / 2, dr = 3 * bw / 4;

            if (comp[0].w * 1073741824 < eps)
                throw OracleTooExpensive(
                    "reference isolation stalled far below the target radius");

            // Counting is only needed once the disc is small enough to emit.
            int m = dr <= eps ? natural_count(f, dcx, dcy, dr) : -1;
            bool emittable = m >= 0;
            if (m == 0) continue;
            if (emittable) {
                for (const QCluster& c : out)
                    if (rdisc_intersects_rdisc(dcx, dcy, dr, c.cx, c.cy, c.r)) {
                        emittable = false;
                        break;
                    }
                if (emittable)
                    for (size_t other : comp_order) {
                        if (other == root) continue;
                        for (const RBox& b : comps[other])
                            if (rdisc_intersects_box(dcx, dcy, dr, b)) { emittable = false; break; }
                        if (!emittable) break;
                    }
            }
            if (emittable) {
                out.push_back({dcx, dcy, dr, m});
                emitted_now.push_back({dcx, dcy, 3 * dr, m});
                continue;
            }
            for (const RBox& b : comp) {
                mpq_class q = b.w / 4, h = b.w / 2;
                next.push_back({b.cx - q, b.cy - q, h});
                next.push_back({b.cx + q, b.cy - q, h});
                next.push_back({b.cx - q, b.cy + q, h});
                next.push_back({b.cx + q, b.cy + q, h});
            }
        }
        if (!emitted_now.empty()) {
            std::vector<RBox> filtered;
            for (const RBox& b : next) {
                bool covered = false;
                for (const QCluster& d3 : emitted_now)
                    if (rdisc_contains_box(d3.cx, d3.cy, d3.r, b)) { covered = true; break; }
                if (!covered) filtered.push_back(b);
            }
            next.swap(filtered);
        }
        active.swap(next);
    }
    if (!active.empty())
        throw OracleTooExpensive("reference isolation did not converge within the round budget");
    return out;
}

// ---------------------------------------------------------------------------
// Reference solutions and result verification

namespace {

QPoly univariate_qpoly(const ParsedPoly& p) {
    unsigned d = 0;
    for (const auto& [e, c] : p.terms) d = std::max(d, e[0]);
    std::vector<QRect> coeffs(d + 1, QRect::point(0, 0));
    for (const auto& [e, c] : p.terms) coeffs[e[0]] = QRect::point(c.value, 0);
    return QPoly{std::move(coeffs)};
}

// f2 with z1 replaced by a rational enclosure of a root.
QPoly specialize_fiber(const ParsedPoly& f2, const QCluster& alpha) {
    QRect a{alpha.cx - alpha.r, alpha.cx + alpha.r, alpha.cy - alpha.r, alpha.cy + alpha.r};
    unsigned d2 = 0;
    for (const auto& [e, c] : f2.terms) d2 = std::max(d2, e[1]);
    std::vector<QRect> coeffs(d2 + 1, QRect::point(0, 0));
    // Group by z2-degree, Horner in z1 within each group (terms sorted by map
    // order: ascending z1 degree first since exponent vectors compare lexic).
    for (unsigned j = 0; j <= d2; ++j) {
        std::vector<std::pair<unsigned, mpq_class>> ts;
        for (const auto& [e, c] : f2.terms)
            if (e[1] == j) ts.emplace_back(e[0], c.value);
        if (ts.empty()) continue;
        std::sort(ts.begin(), ts.end(),
                  [](const auto& x, const auto& y) { return x.first > y.first; });
        QRect acc = QRect::point(ts[0].second, 0);
        unsigned prev = ts[0].first;
        for (size_t t = 1; t < ts.size(); ++t) {
            for (unsigned s = ts[t].first; s < prev; ++s) acc = acc * a;
            acc = acc + QRect::point(ts[t].second, 0);
            prev = ts[t].first;
        }
        for (unsigned s = 0; s < prev; ++s) acc = acc * a;
        coeffs[j] = acc;
    }
    return QPoly{std::move(coeffs)};
}

mpq_class dy_q(const Dyadic& d) { return d.to_mpq(); }

}  // namespace

std::vector<RefSolution> solve_reference(const ParsedSystem& sys, const PolyBox& roi,
                                         const mpq_class& eps) {
    if (!sys.exact_rational())
        throw OracleTooExpensive("reference solver handles exact rational systems only");
    if (sys.dimension() > 2)
        throw OracleTooExpensive("reference solver handles dimension <= 2 only");
    for (const ParsedPoly& p : sys.polys) {
        unsigned d = 0;
        for (const auto& [e, c] : p.terms)
            for (unsigned x : e) d = std::max(d, x);
        if (d > 8) throw OracleTooExpensive("reference solver handles degrees <= 8 only");
    }

    // Sweep 2*roi so anything a solver may legally report is accounted for.
    // First-coordinate roots are pinned far below eps: a fiber root of
    // multiplicity m moves like the m-th root of the coefficient error, so
    // the pin depth scales with the fiber degree.
    mpq_class eps_alpha = eps;
    if (sys.dimension() == 2) {
        unsigned d2 = 0;
        for (const auto& [e, c] : sys.polys[1].terms) d2 = std::max(d2, e[1]);
        long eb = bits_for(eps);
        long alpha_bits = std::min<long>(1024, (eb + 12) * static_cast<long>(d2));
        eps_alpha = Dyadic::pow2(-alpha_bits).to_mpq();
    }
    QPoly f1 = univariate_qpoly(sys.polys[0]);
    std::vector<QCluster> roots1 = isolate(f1, dy_q(roi[0].cx), dy_q(roi[0].cy),
                                           2 * dy_q(roi[0].w), sys.dimension() == 1 ? eps : eps_alpha);

    std::vector<RefSolution> sols;
    if (sys.dimension() == 1) {
        for (const QCluster& a : roots1) sols.push_back({{a}, {a.mult}});
        return sols;
    }
    for (const QCluster& a : roots1) {
        QPoly fiber = specialize_fiber(sys.polys[1], a);
        std::vector<QCluster> roots2 =
            isolate(fiber, dy_q(roi[1].cx), dy_q(roi[1].cy), 2 * dy_q(roi[1].w), eps);
        for (const QCluster& b : roots2) sols.push_back({{a, b}, {a.mult, b.mult}});
    }
    return sols;
}

namespace {

// -1 outside, +1 inside, 0 undecided (enclosure straddles the disc boundary)
int point_vs_disc(const QCluster& pt, const mpq_class& dx, const mpq_class& dy,
                  const mpq_class& dr) {
    mpq_class ex = pt.cx - dx, ey = pt.cy - dy, d2 = ex * ex + ey * ey;
    if (dr >= pt.r) {
        mpq_class in = dr - pt.r;
        if (d2 <= in * in) return 1;
    }
    mpq_class outr = dr + pt.r;
    if (d2 > outr * outr) return -1;
    return 0;
}

// -1 outside roi component, +1 inside, 0 undecided
int point_vs_box(const QCluster& pt, const Box& b) {
    mpq_class h = dy_q(b.w) / 2, bx = dy_q(b.cx), by = dy_q(b.cy);
    mpq_class ix = qmax(qabs(pt.cx - bx) - pt.r, mpq_class(0));
    mpq_class ox = qabs(pt.cx - bx) + pt.r;
    mpq_class iy = qmax(qabs(pt.cy - by) - pt.r, mpq_class(0));
    mpq_class oy = qabs(pt.cy - by) + pt.r;
    if (ox <= h && oy <= h) return 1;
    if (ix > h || iy > h) return -1;
    return 0;
}

}  // namespace

VerifyReport verify_result(const ParsedSystem& sys, const PolyBox& roi, const SolveResult& res) {
    VerifyReport rep;
    std::ostringstream log;
    int n = sys.dimension();

    // Point enclosures one order below the smallest reported radius, so
    // containment tests against the cluster discs stay decidable.
    long eps_bits = 50;
    for (const SolvedCluster& c : res.clusters)
        for (const Disc& d : c.polydisc)
            if (!d.r.is_zero()) eps_bits = std::max(eps_bits, 8 - d.r.floor_log2());
    mpq_class eps = Dyadic::pow2(-eps_bits).to_mpq();
    std::vector<RefSolution> sols = solve_reference(sys, roi, eps);

    // Assign every reference solution to at most one solver cluster.
    std::vector<long long> assigned_total(res.clusters.size(), 0);
    for (const RefSolution& s : sols) {
        long long mult = 1;
        for (int m : s.multiplicities) mult *= m;
        int owner = -1;
        bool ambiguous = false;
        for (size_t ci = 0; ci < res.clusters.size(); ++ci) {
            const SolvedCluster& c = res.clusters[ci];
            bool inside_all = true, outside_any = false, undecided = false;
            for (int d = 0; d < n; ++d) {
                int v = point_vs_disc(s.point[static_cast<size_t>(d)],
                                      dy_q(c.polydisc[static_cast<size_t>(d)].cx),
                                      dy_q(c.polydisc[static_cast<size_t>(d)].cy),
                                      dy_q(c.polydisc[static_cast<size_t>(d)].r));
                if (v < 0) outside_any = true;
                if (v == 0) undecided = true;
                if (v <= 0) inside_all = false;
            }
            if (inside_all) {
                owner = static_cast<int>(ci);
                break;
            }
            if (!outside_any && undecided) ambiguous = true;
        }
        if (owner >= 0) {
            assigned_total[static_cast<size_t>(owner)] += mult;
            continue;
        }
        if (ambiguous) {
            rep.pass = false;
            rep.details = "solution enclosure straddles a cluster boundary; rerun with a finer eps";
            return rep;
        }
        // Unowned solution: must lie outside the (closed) ROI.
        bool inside_roi_possible = true;
        for (int d = 0; d < n; ++d)
            if (point_vs_box(s.point[static_cast<size_t>(d)], roi[static_cast<size_t>(d)]) < 0)
                inside_roi_possible = false;
        if (inside_roi_possible) {
            log << "solution near (" << s.point[0].cx.get_d();
            if (n > 1) log << ", " << s.point[1].cx.get_d();
            log << ") with multiplicity " << mult << " is in the ROI but in no cluster";
            rep.pass = false;
            rep.details = log.str();
            return rep;
        }
    }

    for (size_t ci = 0; ci < res.clusters.size(); ++ci) {
        const SolvedCluster& c = res.clusters[ci];
        long long expect = c.total;
        long long product = 1;
        for (int m : c.multiplicities) product *= m;
        if (product != expect) {
            log << "cluster " << ci << ": total " << expect << " is not the product of "
                << "its multiplicity vector";
            rep.pass = false;
            rep.details = log.str();
            return rep;
        }
        if (assigned_total[ci] != expect) {
            log << "cluster " << ci << ": solver total " << expect
                << " != reference total " << assigned_total[ci];
            rep.pass = false;
            rep.details = log.str();
            return rep;
        }
    }

    rep.pass = true;
    log << "verified " << sols.size() << " reference solutions against " << res.clusters.size()
        << " clusters";
    rep.details = log.str();
    return rep;
}

}  // namespace tricluster::refsolve
