#include "tricluster/unicluster.hpp"

#include <algorithm>
#include <numeric>

namespace tricluster {

namespace {

// 8-connectivity on equal-width boxes: touching edges or corners.
bool adjacent(const Box& a, const Box& b) {
    Dyadic w = a.w;
    Dyadic dx = (a.cx - b.cx).abs(), dy = (a.cy - b.cy).abs();
    return dx <= w && dy <= w;
}

std::vector<std::vector<Box>> connected_components(const std::vector<Box>& boxes) {
    size_t n = boxes.size();
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), size_t{0});
    std::function<size_t(size_t)> find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (adjacent(boxes[i], boxes[j])) parent[find(i)] = find(j);
    std::map<size_t, size_t> order;  // root -> component index, by first member
    std::vector<std::vector<Box>> comps;
    for (size_t i = 0; i < n; ++i) {
        size_t r = find(i);
        auto it = order.find(r);
        if (it == order.end()) {
            it = order.emplace(r, comps.size()).first;
            comps.emplace_back();
        }
        comps[it->second].push_back(boxes[i]);
    }
    return comps;
}

// Square cover of a component: bounding-box center, max side length. Its
// containing disc is the component's enclosing disc.
Box component_cover(const std::vector<Box>& comp) {
    Dyadic h = comp.front().half();
    Dyadic xlo = comp.front().cx, xhi = xlo, ylo = comp.front().cy, yhi = ylo;
    for (const Box& b : comp) {
        if (b.cx < xlo) xlo = b.cx;
        if (b.cx > xhi) xhi = b.cx;
        if (b.cy < ylo) ylo = b.cy;
        if (b.cy > yhi) yhi = b.cy;
    }
    Dyadic wx = xhi - xlo + h.mul_pow2(1);
    Dyadic wy = yhi - ylo + h.mul_pow2(1);
    Dyadic w = wx > wy ? wx : wy;
    return Box((xlo + xhi).mul_pow2(-1), (ylo + yhi).mul_pow2(-1), w);
}

bool strictly_outside(const Box& b, const Box& region) {
    Dyadic rh = region.half(), bh = b.half();
    return (b.cx - region.cx).abs() > rh + bh || (b.cy - region.cy).abs() > rh + bh;
}

long bits_of_eps(const Dyadic& eps) {
    if (eps.sign() <= 0) throw std::invalid_argument("eps must be positive");
    long fl = eps.floor_log2();
    return fl >= 0 ? 1 : -fl;
}

}  // namespace

std::vector<UniCluster> cluster_univariate(UnivariatePolySource& src, const Box& roi,
                                           const Dyadic& eps, const ClusterOptions& opt) {
    std::vector<UniCluster> out;
    std::vector<Box> active{roi};
    Box clip = roi.scaled(Dyadic(2));
    long L = std::max<long>(53, bits_of_eps(eps));

    auto raise_or_throw = [&](const std::vector<Box>& comp, const char* where) {
        if (!src.refinable())
            throw PrecisionExhausted(std::string("fixed-precision source cannot decide ") + where,
                                     comp);
        L *= 2;
        if (L > opt.max_precision_bits)
            throw PrecisionExhausted(std::string("precision cap reached at ") + where, comp);
    };

    // A component whose boxes have shrunk this far below the target radius
    // without certifying is limited by coefficient accuracy, not geometry.
    Dyadic stuck_width = eps.mul_pow2(-6);

    for (int round = 0; round < opt.max_rounds && !active.empty(); ++round) {
        const IntervalPolynomial* F = &src.at_precision(L);

        // Exclusion test on each box's containing disc.
        std::vector<Box> keep;
        for (size_t i = 0; i < active.size(); ++i) {
            PelletOutcome o = t_star(*F, containing_disc(active[i]));
            if (o.status == PelletStatus::insufficient_precision) {
                raise_or_throw({active[i]}, "exclusion test");
                F = &src.at_precision(L);
                --i;  // retry this box at the higher precision
                continue;
            }
            if (o.is_count(0)) continue;
            keep.push_back(active[i]);
        }

        std::vector<std::vector<Box>> comps = connected_components(keep);
        std::vector<Box> next;
        std::vector<Disc> emitted_now;
        bool restart = false;

        for (size_t ci = 0; ci < comps.size() && !restart; ++ci) {
            const std::vector<Box>& comp = comps[ci];
            Box cover = component_cover(comp);
            Disc disc = containing_disc(cover);

            PelletOutcome cn = count_natural(*F, disc);
            while (cn.status == PelletStatus::insufficient_precision) {
                raise_or_throw(comp, "component certification");
                F = &src.at_precision(L);
                cn = count_natural(*F, disc);
            }

            if (cn.is_count(0)) continue;  // certified root-free

            bool emittable = cn.is_count() && disc.r <= eps;
            if (emittable) {
                // Keep output isolators pairwise disjoint and free of roots
                // tracked by other components.
                for (const UniCluster& c : out)
                    if (disc.intersects(c.isolator)) { emittable = false; break; }
                if (emittable)
                    for (size_t cj = 0; cj < comps.size() && emittable; ++cj) {
                        if (cj == ci) continue;
                        for (const Box& b : comps[cj])
                            if (disc.intersects_box(b)) { emittable = false; break; }
                    }
            }

            if (emittable) {
                out.push_back({disc, cover, cn.count, L});
                emitted_now.push_back(disc.scaled(Dyadic(3)));
                continue;
            }

            if (comp.front().w < stuck_width) {
                // Subdivision is stalled below the target scale: the
                // polynomial approximation itself is too coarse.
                raise_or_throw(comp, "component stalled below target radius");
                restart = true;
                break;
            }

            for (const Box& b : comp)
                for (Box& q : b.quadrisect())
                    if (!strictly_outside(q, clip)) next.push_back(std::move(q));
        }

        if (restart) {
            // Precision was raised: redo the surviving boxes unsubdivided,
            // minus those covered by clusters emitted earlier this round.
            next.clear();
            for (const std::vector<Box>& comp : comps)
                for (const Box& b : comp) next.push_back(b);
        }

        // Boxes inside the 3x blow-up of an emitted natural isolator hold no
        // roots beyond those already counted.
        std::vector<Disc> prune = emitted_now;
        if (!prune.empty()) {
            std::vector<Box> filtered;
            for (const Box& b : next) {
                bool covered = false;
                for (const Disc& d3 : prune)
                    if (d3.contains_box(b)) { covered = true; break; }
                if (!covered) filtered.push_back(b);
            }
            next.swap(filtered);
        }
        active.swap(next);
    }

    if (!active.empty())
        throw PrecisionExhausted("subdivision round cap reached", active);
    return out;
}

std::vector<UniCluster> cluster_refine(const UniCluster& c, UnivariatePolySource& src, long L,
                                       const ClusterOptions& opt) {
    Box region = c.isolator.bounding_box();
    std::vector<UniCluster> all = cluster_univariate(src, region, Dyadic::pow2(-L), opt);
    // The region's 2x blow-up stays inside 3*isolator, so everything found
    // belongs to the parent cluster; keep the intersection filter as a guard.
    std::vector<UniCluster> kept;
    int total = 0;
    for (UniCluster& u : all) {
        if (u.isolator.intersects(c.isolator)) {
            total += u.multiplicity;
            kept.push_back(std::move(u));
        }
    }
    if (total != c.multiplicity)
        throw std::logic_error("cluster_refine: child multiplicities do not sum to parent");
    return kept;
}

}  // namespace tricluster
