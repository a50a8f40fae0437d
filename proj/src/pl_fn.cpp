#include "plsemi/pl_fn.hpp"

#include <algorithm>
#include <cstddef>

namespace plsemi {

namespace {

bool collinear(const Breakpoint& a, const Breakpoint& b, const Breakpoint& c) {
    return (b.v - a.v) * (c.u - b.u) == (c.v - b.v) * (b.u - a.u);
}

Rational interp(const Breakpoint& a, const Breakpoint& b, const Rational& u) {
    return a.v + (b.v - a.v) * (u - a.u) / (b.u - a.u);
}

}  // namespace

PLFn::PLFn(std::vector<Breakpoint> pts) : pts_(std::move(pts)) {
    if (pts_.empty()) throw std::invalid_argument("PLFn: empty breakpoint list");
    for (std::size_t i = 1; i < pts_.size(); ++i)
        if (!(pts_[i - 1].u < pts_[i].u))
            throw std::invalid_argument("PLFn: breakpoint abscissae must be strictly increasing");
}

PLFn PLFn::line(Breakpoint a, Breakpoint b) {
    return PLFn({std::move(a), std::move(b)});
}

Rational PLFn::eval(const Rational& u) const {
    if (u <= pts_.front().u) return pts_.front().v;
    if (u >= pts_.back().u) return pts_.back().v;
    // first breakpoint with abscissa >= u
    auto it = std::lower_bound(pts_.begin(), pts_.end(), u,
                               [](const Breakpoint& p, const Rational& x) { return p.u < x; });
    if (it->u == u) return it->v;
    return interp(*(it - 1), *it, u);
}

PLFn PLFn::canonicalized() const {
    std::vector<Breakpoint> out;
    out.reserve(pts_.size());
    for (const Breakpoint& p : pts_) {
        while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), p)) out.pop_back();
        out.push_back(p);
    }
    // boundary points repeating the constant extension
    while (out.size() >= 2 && out[0].v == out[1].v) out.erase(out.begin());
    while (out.size() >= 2 && out[out.size() - 1].v == out[out.size() - 2].v) out.pop_back();
    // a constant function has no distinguished abscissa; pin it at 0
    if (out.size() == 1) out[0].u = Rational(0);
    return PLFn(std::move(out));
}

bool PLFn::is_canonical() const {
    if (pts_.size() >= 2 && (pts_[0].v == pts_[1].v || pts_[pts_.size() - 1].v == pts_[pts_.size() - 2].v))
        return false;
    for (std::size_t i = 2; i < pts_.size(); ++i)
        if (collinear(pts_[i - 2], pts_[i - 1], pts_[i])) return false;
    return true;
}

PLFn PLFn::shifted(const Rational& dt) const {
    std::vector<Breakpoint> out = pts_;
    for (Breakpoint& p : out) p.u += dt;
    return PLFn(std::move(out));
}

PLFn PLFn::scaled(const Rational& c) const {
    std::vector<Breakpoint> out = pts_;
    for (Breakpoint& p : out) p.v *= c;
    return PLFn(std::move(out));
}

std::vector<Rational> merged_grid(const PLFn& a, const PLFn& b) {
    std::vector<Rational> grid;
    grid.reserve(a.points().size() + b.points().size());
    std::size_t i = 0, j = 0;
    const auto& pa = a.points();
    const auto& pb = b.points();
    while (i < pa.size() || j < pb.size()) {
        if (j == pb.size() || (i < pa.size() && pa[i].u < pb[j].u)) {
            grid.push_back(pa[i++].u);
        } else if (i == pa.size() || pb[j].u < pa[i].u) {
            grid.push_back(pb[j++].u);
        } else {
            grid.push_back(pa[i].u);
            ++i;
            ++j;
        }
    }
    return grid;
}

namespace {

template <typename Combine>
PLFn combine_pointwise(const PLFn& a, const PLFn& b, Combine&& pick, bool with_crossings) {
    const std::vector<Rational> grid = merged_grid(a, b);
    std::vector<Breakpoint> out;
    out.reserve(grid.size() + 4);

    Rational prev_da, prev_db;
    bool have_prev = false;
    Rational prev_u;
    for (const Rational& u : grid) {
        const Rational va = a.eval(u);
        const Rational vb = b.eval(u);
        if (with_crossings && have_prev) {
            // strict sign change of (a-b) across the interval => exact crossing inside
            const Rational dl = prev_da - prev_db;
            const Rational dr = va - vb;
            if (dl.sign() * dr.sign() < 0) {
                const Rational cross = prev_u + (u - prev_u) * dl / (dl - dr);
                out.push_back({cross, a.eval(cross)});
            }
        }
        out.push_back({u, pick(va, vb)});
        prev_da = va;
        prev_db = vb;
        prev_u = u;
        have_prev = true;
    }
    return PLFn(std::move(out)).canonicalized();
}

}  // namespace

PLFn pl_min(const PLFn& a, const PLFn& b) {
    return combine_pointwise(a, b, [](const Rational& x, const Rational& y) { return min(x, y); }, true);
}

PLFn pl_max(const PLFn& a, const PLFn& b) {
    return combine_pointwise(a, b, [](const Rational& x, const Rational& y) { return max(x, y); }, true);
}

PLFn operator+(const PLFn& a, const PLFn& b) {
    return combine_pointwise(a, b, [](const Rational& x, const Rational& y) { return x + y; }, false);
}

PLFn operator-(const PLFn& a, const PLFn& b) {
    return combine_pointwise(a, b, [](const Rational& x, const Rational& y) { return x - y; }, false);
}

PLFn tail_sup(const PLFn& f) {
    const auto& pts = f.points();
    std::vector<Breakpoint> rev;  // built right-to-left
    Rational running = pts.back().v;
    rev.push_back({pts.back().u, running});
    for (std::size_t k = pts.size() - 1; k-- > 0;) {
        const Breakpoint& left = pts[k];
        const Breakpoint& right = pts[k + 1];
        // sup over [u, inf) on this segment is max(f(u), running); running >= right.v
        if (left.v > running) {
            if (right.v < running) {
                // f crosses the running level inside the segment
                const Rational w = left.u + (left.v - running) * (right.u - left.u) / (left.v - right.v);
                rev.push_back({w, running});
            }
            rev.push_back({left.u, left.v});
            running = left.v;
        } else {
            rev.push_back({left.u, running});
        }
    }
    std::reverse(rev.begin(), rev.end());
    return PLFn(std::move(rev)).canonicalized();
}

Rational integrate(const PLFn& f, const Rational& a, const Rational& b) {
    if (a > b) throw std::invalid_argument("integrate: a > b");
    if (a == b) return Rational(0);

    std::vector<Rational> cuts;
    cuts.push_back(a);
    for (const Breakpoint& p : f.points())
        if (a < p.u && p.u < b) cuts.push_back(p.u);
    cuts.push_back(b);

    Rational total(0);
    const Rational half(1, 2);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += (f.eval(cuts[i]) + f.eval(cuts[i + 1])) * half * (cuts[i + 1] - cuts[i]);
    return total;
}

Rational sup_abs_diff(const PLFn& a, const PLFn& b) {
    Rational best(0);
    for (const Rational& u : merged_grid(a, b)) {
        const Rational d = abs(a.eval(u) - b.eval(u));
        if (d > best) best = d;
    }
    return best;
}

PLFn weighted_sum(std::span<const std::pair<Rational, PLFn>> terms) {
    if (terms.empty()) throw std::invalid_argument("weighted_sum: no terms");
    std::vector<PLFn> level;
    level.reserve(terms.size());
    for (const auto& [w, f] : terms) level.push_back(f.scaled(w));
    while (level.size() > 1) {
        std::vector<PLFn> next;
        next.reserve(level.size() / 2 + 1);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] + level[i + 1]);
        if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
        level = std::move(next);
    }
    return level.front();
}

}  // namespace plsemi
