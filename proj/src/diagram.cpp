#include "haar/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "haar/errors.hpp"
#include "haar/weingarten.hpp"

namespace haar {

namespace {

using EP = std::pair<int, int>;  // (box index, decoration index)

std::string ep_str(const EP& e) {
    return "box " + std::to_string(e.first) + " dec " + std::to_string(e.second);
}

bool advance_multi(std::vector<int>& idx, const std::vector<int>& dims) {
    for (int ax = static_cast<int>(dims.size()) - 1; ax >= 0; --ax) {
        if (++idx[ax] < dims[ax]) return true;
        idx[ax] = 0;
    }
    return false;
}

Shading flipped(Shading s) { return s == Shading::white ? Shading::black : Shading::white; }

}  // namespace

Box Box::constant(std::string label, std::vector<Decoration> decs, Tensor data) {
    Box b;
    b.label = std::move(label);
    b.decorations = std::move(decs);
    b.payload = std::move(data);
    b.has_data = true;
    return b;
}

Box Box::abstract(std::string label, std::vector<Decoration> decs) {
    Box b;
    b.label = std::move(label);
    b.decorations = std::move(decs);
    return b;
}

Box Box::haar(std::string label, std::vector<Decoration> decs, std::string group,
              HaarVariant variant) {
    Box b;
    b.label = std::move(label);
    b.decorations = std::move(decs);
    b.is_haar = true;
    b.group = std::move(group);
    b.variant = variant;
    return b;
}

const Space* Diagram::find_space(const std::string& id) const {
    for (const auto& s : spaces)
        if (s.id == id) return &s;
    return nullptr;
}

long Diagram::dim_of(const Decoration& dec) const {
    const Space* s = find_space(dec.space);
    if (!s) throw std::invalid_argument("diagram: unknown space " + dec.space);
    return s->dim;
}

ValidationReport validate(const Diagram& d) {
    ValidationReport rep;
    auto err = [&](std::string m) { rep.errors.push_back(std::move(m)); };

    std::map<std::string, long> dims;
    for (const auto& s : d.spaces) {
        if (s.dim < 1) err("space " + s.id + ": dim must be at least 1");
        if (!dims.emplace(s.id, s.dim).second) err("space " + s.id + ": duplicate id");
    }

    for (std::size_t b = 0; b < d.boxes.size(); ++b) {
        const Box& box = d.boxes[b];
        bool spaces_ok = true;
        for (std::size_t dec = 0; dec < box.decorations.size(); ++dec) {
            if (!dims.count(box.decorations[dec].space)) {
                err(ep_str({static_cast<int>(b), static_cast<int>(dec)}) + ": unknown space " +
                    box.decorations[dec].space);
                spaces_ok = false;
            }
        }
        if (!spaces_ok) continue;
        if (!box.is_haar && box.has_data) {
            if (box.payload.rank() != static_cast<int>(box.decorations.size())) {
                err("box " + std::to_string(b) + ": payload rank " +
                    std::to_string(box.payload.rank()) + " does not match decoration count " +
                    std::to_string(box.decorations.size()));
            } else {
                for (std::size_t dec = 0; dec < box.decorations.size(); ++dec)
                    if (box.payload.dims[dec] != dims.at(box.decorations[dec].space))
                        err(ep_str({static_cast<int>(b), static_cast<int>(dec)}) +
                            ": payload axis dim does not match space " +
                            box.decorations[dec].space);
            }
        }
        if (box.is_haar) {
            long wp = 1, bp = 1;
            for (const auto& dec : box.decorations)
                (dec.shading == Shading::white ? wp : bp) *= dims.at(dec.space);
            if (wp != bp)
                err("box " + std::to_string(b) + ": Haar box is not square (" +
                    std::to_string(wp) + " vs " + std::to_string(bp) + ")");
        }
    }

    // all boxes of one Haar group reference one unitary, so one total dimension
    std::map<std::string, std::pair<long, std::size_t>> group_dim;
    for (std::size_t b = 0; b < d.boxes.size(); ++b) {
        const Box& box = d.boxes[b];
        if (!box.is_haar) continue;
        long wp = 1;
        bool known = true;
        for (const auto& dec : box.decorations) {
            auto it = dims.find(dec.space);
            if (it == dims.end()) { known = false; break; }
            if (dec.shading == Shading::white) wp *= it->second;
        }
        if (!known) continue;
        auto [it, fresh] = group_dim.emplace(box.group, std::make_pair(wp, b));
        if (!fresh && it->second.first != wp)
            err("box " + std::to_string(b) + ": group " + box.group +
                " mixes total dimensions (" + std::to_string(wp) + " vs " +
                std::to_string(it->second.first) + " at box " + std::to_string(it->second.second) +
                ")");
    }

    std::set<EP> used;
    for (std::size_t w = 0; w < d.wires.size(); ++w) {
        const Wire& wire = d.wires[w];
        EP ends[2] = {{wire.b1, wire.d1}, {wire.b2, wire.d2}};
        bool in_range = true;
        for (const EP& e : ends) {
            if (e.first < 0 || e.first >= static_cast<int>(d.boxes.size()) || e.second < 0 ||
                e.second >= static_cast<int>(d.boxes[e.first].decorations.size())) {
                err("wire " + std::to_string(w) + ": endpoint out of range (" + ep_str(e) + ")");
                in_range = false;
            }
        }
        if (!in_range) continue;
        for (const EP& e : ends)
            if (!used.insert(e).second)
                err("wire " + std::to_string(w) + ": " + ep_str(e) + " already occupied");
        const auto& c1 = d.boxes[wire.b1].decorations[wire.d1];
        const auto& c2 = d.boxes[wire.b2].decorations[wire.d2];
        if (c1.space != c2.space)
            err("wire " + std::to_string(w) + ": joins different spaces " + c1.space + " and " +
                c2.space);
    }
    return rep;
}

void validate_or_throw(const Diagram& d) {
    ValidationReport rep = validate(d);
    if (rep.ok()) return;
    std::string msg = "diagram invalid:";
    for (const auto& e : rep.errors) msg += "\n  " + e;
    throw ValidationError(msg);
}

Tensor contract(const Diagram& d) {
    validate_or_throw(d);
    for (std::size_t b = 0; b < d.boxes.size(); ++b) {
        if (d.boxes[b].is_haar)
            throw ValidationError("contract: box " + std::to_string(b) +
                                  " carries a Haar mark; instantiate first");
        if (!d.boxes[b].has_data)
            throw ValidationError("contract: box " + std::to_string(b) + " has no payload data");
    }
    if (d.boxes.empty()) {
        Tensor one;
        one.data[0] = 1.0;
        return one;
    }

    struct Node {
        Tensor t;
        std::vector<EP> eps;
        bool live = true;
    };
    std::vector<Node> nodes(d.boxes.size());
    std::map<EP, int> owner;
    for (std::size_t b = 0; b < d.boxes.size(); ++b) {
        nodes[b].t = d.boxes[b].payload;
        for (std::size_t dec = 0; dec < d.boxes[b].decorations.size(); ++dec) {
            EP e{static_cast<int>(b), static_cast<int>(dec)};
            nodes[b].eps.push_back(e);
            owner[e] = static_cast<int>(b);
        }
    }

    // deterministic elimination order
    std::vector<std::pair<EP, EP>> ws;
    for (const Wire& w : d.wires) {
        EP a{w.b1, w.d1}, b{w.b2, w.d2};
        if (b < a) std::swap(a, b);
        ws.emplace_back(a, b);
    }
    std::sort(ws.begin(), ws.end());

    auto axis_of = [&](const Node& n, const EP& e) {
        auto it = std::find(n.eps.begin(), n.eps.end(), e);
        return static_cast<int>(it - n.eps.begin());
    };

    for (const auto& [e1, e2] : ws) {
        int i = owner.at(e1), j = owner.at(e2);
        if (i == j) {
            Node& n = nodes[i];
            int a1 = axis_of(n, e1), a2 = axis_of(n, e2);
            n.t = self_trace(n.t, a1, a2);
            n.eps.erase(n.eps.begin() + std::max(a1, a2));
            n.eps.erase(n.eps.begin() + std::min(a1, a2));
        } else {
            Node& na = nodes[i];
            Node& nb = nodes[j];
            int a1 = axis_of(na, e1), a2 = axis_of(nb, e2);
            Tensor merged = tensordot(na.t, nb.t, {{a1, a2}});
            std::vector<EP> eps;
            for (int t = 0; t < static_cast<int>(na.eps.size()); ++t)
                if (t != a1) eps.push_back(na.eps[t]);
            for (int t = 0; t < static_cast<int>(nb.eps.size()); ++t)
                if (t != a2) eps.push_back(nb.eps[t]);
            na.t = std::move(merged);
            na.eps = std::move(eps);
            nb.live = false;
            nb.t = Tensor();
            for (const EP& e : na.eps) owner[e] = i;
        }
        owner.erase(e1);
        owner.erase(e2);
    }

    Tensor result;
    result.data[0] = 1.0;
    std::vector<EP> eps;
    for (const Node& n : nodes) {
        if (!n.live) continue;
        result = outer(result, n.t);
        eps.insert(eps.end(), n.eps.begin(), n.eps.end());
    }

    // free axes in (box, decoration) order
    std::vector<int> order(eps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return eps[a] < eps[b]; });
    return permute(result, order);
}

Box bell_vector(const Space& s) {
    int n = static_cast<int>(s.dim);
    Tensor t({n, n});
    for (int i = 0; i < n; ++i) t.at({i, i}) = 1.0;
    return Box::constant("bell", {{s.id, Shading::white}, {s.id, Shading::white}}, std::move(t));
}

Box bell_form(const Space& s) {
    int n = static_cast<int>(s.dim);
    Tensor t({n, n});
    for (int i = 0; i < n; ++i) t.at({i, i}) = 1.0;
    return Box::constant("bell*", {{s.id, Shading::black}, {s.id, Shading::black}}, std::move(t));
}

Box max_entangled(const Space& s, bool normalized) {
    int n = static_cast<int>(s.dim);
    Tensor t({n, n, n, n});
    cdouble v = normalized ? cdouble(1.0 / static_cast<double>(n)) : cdouble(1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.at({i, i, j, j}) = v;
    return Box::constant(normalized ? "E_norm" : "E",
                         {{s.id, Shading::white},
                          {s.id, Shading::white},
                          {s.id, Shading::black},
                          {s.id, Shading::black}},
                         std::move(t));
}

Box identity_box(const Space& s) {
    int n = static_cast<int>(s.dim);
    Tensor t({n, n});
    for (int i = 0; i < n; ++i) t.at({i, i}) = 1.0;
    return Box::constant("__id", {{s.id, Shading::white}, {s.id, Shading::black}}, std::move(t));
}

Box ket_e1(const Space& s) {
    Tensor t({static_cast<int>(s.dim)});
    t.at({0}) = 1.0;
    return Box::constant("e1", {{s.id, Shading::white}}, std::move(t));
}

Box bra_e1(const Space& s) {
    Tensor t({static_cast<int>(s.dim)});
    t.at({0}) = 1.0;
    return Box::constant("e1*", {{s.id, Shading::black}}, std::move(t));
}

Diagram normalize_haar_boxes(const Diagram& d) {
    Diagram out = d;
    for (Box& box : out.boxes) {
        if (!box.is_haar) continue;
        if (box.variant != HaarVariant::Ustar && box.variant != HaarVariant::Utrans) continue;
        for (Decoration& dec : box.decorations) dec.shading = flipped(dec.shading);
        box.variant = box.variant == HaarVariant::Ustar ? HaarVariant::Ubar : HaarVariant::U;
    }
    return out;
}

Diagram instantiate(const Diagram& d, const std::map<std::string, Eigen::MatrixXcd>& us) {
    Diagram out = d;
    for (std::size_t b = 0; b < out.boxes.size(); ++b) {
        Box& box = out.boxes[b];
        if (!box.is_haar) continue;
        auto it = us.find(box.group);
        if (it == us.end())
            throw std::invalid_argument("instantiate: no matrix for group " + box.group);
        const Eigen::MatrixXcd& m = it->second;

        std::vector<int> dims;
        long wp = 1, bp = 1;
        for (const auto& dec : box.decorations) {
            long dim = out.dim_of(dec);
            dims.push_back(static_cast<int>(dim));
            (dec.shading == Shading::white ? wp : bp) *= dim;
        }
        if (wp != bp || m.rows() != m.cols() || m.rows() != wp)
            throw std::invalid_argument("instantiate: matrix shape does not match box " +
                                        std::to_string(b));

        Tensor t(dims);
        std::vector<int> idx(dims.size(), 0);
        do {
            long wf = 0, bf = 0;
            for (std::size_t dec = 0; dec < dims.size(); ++dec) {
                if (box.decorations[dec].shading == Shading::white)
                    wf = wf * dims[dec] + idx[dec];
                else
                    bf = bf * dims[dec] + idx[dec];
            }
            cdouble v;
            switch (box.variant) {
                case HaarVariant::U: v = m(wf, bf); break;
                case HaarVariant::Ubar: v = std::conj(m(wf, bf)); break;
                case HaarVariant::Ustar: v = std::conj(m(bf, wf)); break;
                case HaarVariant::Utrans: v = m(bf, wf); break;
            }
            t.at(idx) = v;
        } while (advance_multi(idx, dims));
        box = Box::constant(box.label, box.decorations, std::move(t));
    }
    return out;
}

namespace {

struct GroupSplit {
    std::vector<int> plain, conj;
};

GroupSplit split_group(const Diagram& d, const std::string& group) {
    GroupSplit g;
    for (std::size_t b = 0; b < d.boxes.size(); ++b) {
        const Box& box = d.boxes[b];
        if (!box.is_haar || box.group != group) continue;
        if (box.variant == HaarVariant::Ustar || box.variant == HaarVariant::Utrans)
            throw std::invalid_argument("group " + group +
                                        ": adjoint/transpose marks present; normalize first");
        (box.variant == HaarVariant::U ? g.plain : g.conj).push_back(static_cast<int>(b));
    }
    return g;
}

std::vector<int> shading_positions(const Box& box, Shading s) {
    std::vector<int> out;
    for (std::size_t dec = 0; dec < box.decorations.size(); ++dec)
        if (box.decorations[dec].shading == s) out.push_back(static_cast<int>(dec));
    return out;
}

}  // namespace

std::vector<Removal> removals(const Diagram& d, const std::string& group) {
    GroupSplit g = split_group(d, group);
    if (g.plain.empty() && g.conj.empty())
        throw std::invalid_argument("removals: no boxes in group " + group);
    if (g.plain.size() != g.conj.size()) return {};
    int p = static_cast<int>(g.plain.size());
    if (p > 5) throw BudgetError("removals: enumeration beyond budget (p <= 5)");

    std::vector<Removal> out;
    std::vector<int> a(p), b(p);
    std::iota(a.begin(), a.end(), 0);
    do {
        std::iota(b.begin(), b.end(), 0);
        do {
            out.push_back({Permutation(std::vector<int>(a)), Permutation(std::vector<int>(b))});
        } while (std::next_permutation(b.begin(), b.end()));
    } while (std::next_permutation(a.begin(), a.end()));
    return out;
}

Diagram apply_removal(const Diagram& d, const std::string& group, const Removal& r) {
    GroupSplit g = split_group(d, group);
    int p = static_cast<int>(g.plain.size());
    if (p == 0 || g.plain.size() != g.conj.size())
        throw std::invalid_argument("apply_removal: group has unequal plain/conjugated counts");
    if (r.alpha.size() != p || r.beta.size() != p)
        throw std::invalid_argument("apply_removal: removal size does not match group");

    // fuse partner of every doomed leg: whites follow alpha, blacks follow beta
    std::map<EP, EP> partner;
    for (int i = 0; i < p; ++i) {
        for (Shading s : {Shading::white, Shading::black}) {
            int target = s == Shading::white ? r.alpha(i) : r.beta(i);
            const Box& ub = d.boxes[g.plain[i]];
            const Box& vb = d.boxes[g.conj[target]];
            auto up = shading_positions(ub, s);
            auto vp = shading_positions(vb, s);
            if (up.size() != vp.size())
                throw std::invalid_argument("apply_removal: leg layouts differ within group " +
                                            group);
            for (std::size_t t = 0; t < up.size(); ++t) {
                if (ub.decorations[up[t]].space != vb.decorations[vp[t]].space)
                    throw std::invalid_argument("apply_removal: leg spaces differ within group " +
                                                group);
                EP a{g.plain[i], up[t]}, b{g.conj[target], vp[t]};
                partner[a] = b;
                partner[b] = a;
            }
        }
    }

    std::map<EP, EP> nb;
    for (const Wire& w : d.wires) {
        EP a{w.b1, w.d1}, b{w.b2, w.d2};
        nb[a] = b;
        nb[b] = a;
    }

    std::set<int> dead(g.plain.begin(), g.plain.end());
    dead.insert(g.conj.begin(), g.conj.end());
    auto is_dead = [&](const EP& e) { return dead.count(e.first) > 0; };

    Diagram out;
    out.spaces = d.spaces;
    std::vector<int> remap(d.boxes.size(), -1);
    for (std::size_t b = 0; b < d.boxes.size(); ++b) {
        if (dead.count(static_cast<int>(b))) continue;
        remap[b] = static_cast<int>(out.boxes.size());
        out.boxes.push_back(d.boxes[b]);
    }
    for (const Wire& w : d.wires)
        if (!dead.count(w.b1) && !dead.count(w.b2))
            out.wire(remap[w.b1], w.d1, remap[w.b2], w.d2);

    std::set<EP> visited;

    // chains entered from a surviving endpoint end at another survivor or at
    // a free doomed leg (then the survivor is left free)
    for (const auto& [s, e0] : nb) {
        if (is_dead(s) || !is_dead(e0) || visited.count(e0)) continue;
        EP cur = e0;
        while (true) {
            visited.insert(cur);
            EP q = partner.at(cur);
            visited.insert(q);
            auto itn = nb.find(q);
            if (itn == nb.end()) break;  // free end
            EP m = itn->second;
            if (!is_dead(m)) {
                out.wire(remap[s.first], s.second, remap[m.first], m.second);
                break;
            }
            cur = m;
        }
    }

    // chains between two free doomed legs collapse to an unwired identity box
    for (const auto& [e, q0] : partner) {
        if (visited.count(e) || nb.count(e)) continue;
        const Space* sp = d.find_space(d.boxes[e.first].decorations[e.second].space);
        EP cur = e;
        bool closed_free = true;
        while (true) {
            visited.insert(cur);
            EP q = partner.at(cur);
            visited.insert(q);
            auto itn = nb.find(q);
            if (itn == nb.end()) break;
            EP m = itn->second;
            if (!is_dead(m)) { closed_free = false; break; }  // handled from the survivor side
            cur = m;
        }
        if (closed_free) out.boxes.push_back(identity_box(*sp));
    }

    // what is left closes on itself: each cycle is a loop worth one dimension
    for (const auto& [e, q0] : partner) {
        if (visited.count(e)) continue;
        const Space* sp = d.find_space(d.boxes[e.first].decorations[e.second].space);
        EP cur = e;
        do {
            visited.insert(cur);
            EP q = partner.at(cur);
            visited.insert(q);
            cur = nb.at(q);
        } while (cur != e);
        Box loop = identity_box(*sp);
        loop.label = "__loop";
        int idx = static_cast<int>(out.boxes.size());
        out.boxes.push_back(std::move(loop));
        out.wire(idx, 0, idx, 1);
    }

    return out;
}

namespace {

long group_total_dim(const Diagram& d, const GroupSplit& g) {
    const Box& box = d.boxes[g.plain.empty() ? g.conj.front() : g.plain.front()];
    long wp = 1;
    for (const auto& dec : box.decorations)
        if (dec.shading == Shading::white) wp *= d.dim_of(dec);
    return wp;
}

std::map<std::string, long> group_dim_monomial(const Diagram& d, const GroupSplit& g) {
    const Box& box = d.boxes[g.plain.empty() ? g.conj.front() : g.plain.front()];
    std::map<std::string, long> m;
    for (const auto& dec : box.decorations)
        if (dec.shading == Shading::white) ++m[dec.space];
    return m;
}

}  // namespace

std::vector<std::pair<Diagram, Rational>> expectation(const Diagram& d, const std::string& group,
                                                      long n_total) {
    std::vector<Removal> rem = removals(d, group);
    std::vector<std::pair<Diagram, Rational>> out;
    if (rem.empty()) return out;
    GroupSplit g = split_group(d, group);
    if (group_total_dim(d, g) != n_total)
        throw std::invalid_argument("expectation: n_total does not match the group dimension");
    int p = static_cast<int>(g.plain.size());
    for (const Removal& r : rem) {
        Rational w = weingarten_exact(n_total, p, CycleType::of(r.alpha * r.beta.inverse()));
        out.emplace_back(apply_removal(d, group, r), std::move(w));
    }
    return out;
}

namespace {

// Terminal diagrams decompose into loop boxes plus constant matrix boxes
// closed into trace cycles; anything else is out of scope here.
//
// A matrix box pairs each white leg with the same-position black leg, so a
// box with r white and r black legs is a square matrix over the composite
// space. Chains enter a box through one full side and leave through the
// other; entering through the black side flips the box to its transpose.
SymbolicWeight read_off(const Diagram& d) {
    SymbolicWeight w;

    std::map<EP, EP> nb;
    for (const Wire& wire : d.wires) {
        EP a{wire.b1, wire.d1}, b{wire.b2, wire.d2};
        nb[a] = b;
        nb[b] = a;
    }
    for (std::size_t b = 0; b < d.boxes.size(); ++b)
        for (std::size_t dec = 0; dec < d.boxes[b].decorations.size(); ++dec)
            if (!nb.count({static_cast<int>(b), static_cast<int>(dec)}))
                throw ValidationError("symbolic read-off: free leg at " +
                                      ep_str({static_cast<int>(b), static_cast<int>(dec)}));

    std::vector<std::vector<int>> wpos(d.boxes.size()), bpos(d.boxes.size());
    // leg -> (side, position within that side)
    std::vector<std::map<int, std::pair<Shading, int>>> side_of(d.boxes.size());
    std::vector<bool> is_loop(d.boxes.size(), false);
    for (std::size_t b = 0; b < d.boxes.size(); ++b) {
        const Box& box = d.boxes[b];
        if (box.is_haar)
            throw ValidationError("symbolic read-off: residual Haar box " + std::to_string(b));
        if (box.label == "__loop") {
            is_loop[b] = true;
            ++w.dim_exponents[box.decorations.at(0).space];
            continue;
        }
        wpos[b] = shading_positions(box, Shading::white);
        bpos[b] = shading_positions(box, Shading::black);
        if (wpos[b].size() != bpos[b].size() || wpos[b].empty())
            throw ValidationError("symbolic read-off: box " + std::to_string(b) +
                                  " is not a square matrix box");
        for (std::size_t t = 0; t < wpos[b].size(); ++t) {
            if (box.decorations[wpos[b][t]].space != box.decorations[bpos[b][t]].space)
                throw ValidationError("symbolic read-off: box " + std::to_string(b) +
                                      " has mismatched row and column spaces");
            side_of[b][wpos[b][t]] = {Shading::white, static_cast<int>(t)};
            side_of[b][bpos[b][t]] = {Shading::black, static_cast<int>(t)};
        }
    }

    std::vector<bool> seen(d.boxes.size(), false);
    for (std::size_t b0 = 0; b0 < d.boxes.size(); ++b0) {
        if (is_loop[b0] || seen[b0]) continue;
        std::vector<TraceFactor> word;
        std::size_t b = b0;
        Shading entry = Shading::white;
        do {
            seen[b] = true;
            word.push_back({d.boxes[b].label, entry == Shading::black});
            const auto& exits = entry == Shading::white ? bpos[b] : wpos[b];
            int next_box = -1;
            Shading next_side = Shading::white;
            for (std::size_t t = 0; t < exits.size(); ++t) {
                EP nxt = nb.at({static_cast<int>(b), exits[t]});
                if (is_loop[nxt.first])
                    throw ValidationError("symbolic read-off: wiring at box " +
                                          std::to_string(b) + " is not a trace chain");
                auto [side, pos] = side_of[nxt.first].at(nxt.second);
                if (t == 0) {
                    next_box = nxt.first;
                    next_side = side;
                } else if (nxt.first != next_box || side != next_side) {
                    throw ValidationError("symbolic read-off: legs of box " + std::to_string(b) +
                                          " scatter across boxes, not a trace chain");
                }
                if (pos != static_cast<int>(t))
                    throw ValidationError("symbolic read-off: legs of box " + std::to_string(b) +
                                          " cross positions, not a trace chain");
            }
            b = static_cast<std::size_t>(next_box);
            entry = next_side;
        } while (b != b0);
        w.trace_words.push_back(std::move(word));
    }
    return w;
}

void expand(const Diagram& d, const std::vector<std::string>& groups, std::size_t gi,
            std::vector<WgFactor>& acc, std::vector<SymbolicWeight>& out) {
    if (gi == groups.size()) {
        SymbolicWeight w = read_off(d);
        w.wg = acc;
        out.push_back(std::move(w));
        return;
    }
    GroupSplit g = split_group(d, groups[gi]);
    auto mono = group_dim_monomial(d, g);
    for (const Removal& r : removals(d, groups[gi])) {
        acc.push_back({mono, CycleType::of(r.alpha * r.beta.inverse())});
        expand(apply_removal(d, groups[gi], r), groups, gi + 1, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<SymbolicWeight> symbolic_moment(const Diagram& d,
                                            const std::vector<std::string>& groups) {
    validate_or_throw(d);
    Diagram nd = normalize_haar_boxes(d);
    std::vector<SymbolicWeight> out;
    std::vector<WgFactor> acc;
    expand(nd, groups, 0, acc, out);
    return out;
}

Rational SymbolicWeight::evaluate(const std::map<std::string, long>& dims,
                                  const std::map<std::string, RatMatrix>& constants) const {
    auto dim_of = [&](const std::string& id) {
        auto it = dims.find(id);
        if (it == dims.end()) throw std::invalid_argument("evaluate: unbound space " + id);
        return it->second;
    };
    Rational v = coeff;
    for (const auto& [id, e] : dim_exponents) v *= rat_pow(dim_of(id), e);
    for (const WgFactor& f : wg) {
        long n = 1;
        for (const auto& [id, e] : f.dim_exponents)
            for (long t = 0; t < e; ++t) n *= dim_of(id);
        v *= weingarten_exact(n, f.arg.sum(), f.arg);
    }
    auto bind = [&](const TraceFactor& f) {
        auto it = constants.find(f.label);
        if (it == constants.end())
            throw std::invalid_argument("evaluate: unbound constant " + f.label);
        return f.transposed ? rat_mat_transpose(it->second) : it->second;
    };
    for (const auto& word : trace_words) {
        RatMatrix m = bind(word.front());
        for (std::size_t t = 1; t < word.size(); ++t) m = rat_mat_mul(m, bind(word[t]));
        v *= rat_mat_trace(m);
    }
    return v;
}

Rational evaluate_sum(const std::vector<SymbolicWeight>& terms,
                      const std::map<std::string, long>& dims,
                      const std::map<std::string, RatMatrix>& constants) {
    Rational v(0);
    for (const auto& t : terms) v += t.evaluate(dims, constants);
    return v;
}

namespace {

const char* shading_name(Shading s) { return s == Shading::white ? "white" : "black"; }

Shading shading_parse(const std::string& s) {
    if (s == "white") return Shading::white;
    if (s == "black") return Shading::black;
    throw ValidationError("diagram json: unknown shading " + s);
}

const char* variant_name(HaarVariant v) {
    switch (v) {
        case HaarVariant::U: return "U";
        case HaarVariant::Ubar: return "Ubar";
        case HaarVariant::Ustar: return "Ustar";
        default: return "Utrans";
    }
}

HaarVariant variant_parse(const std::string& s) {
    if (s == "U") return HaarVariant::U;
    if (s == "Ubar") return HaarVariant::Ubar;
    if (s == "Ustar") return HaarVariant::Ustar;
    if (s == "Utrans") return HaarVariant::Utrans;
    throw ValidationError("diagram json: unknown haar variant " + s);
}

}  // namespace

nlohmann::json diagram_to_json(const Diagram& d) {
    nlohmann::json j;
    j["spaces"] = nlohmann::json::array();
    for (const auto& s : d.spaces) {
        nlohmann::json js{{"id", s.id}, {"dim", s.dim}};
        if (s.shape_tag != "round") js["shape"] = s.shape_tag;
        j["spaces"].push_back(std::move(js));
    }
    j["boxes"] = nlohmann::json::array();
    for (const auto& box : d.boxes) {
        nlohmann::json jb;
        jb["label"] = box.label;
        jb["decorations"] = nlohmann::json::array();
        for (const auto& dec : box.decorations)
            jb["decorations"].push_back({{"space", dec.space}, {"shading", shading_name(dec.shading)}});
        if (box.is_haar) {
            jb["payload"] = {{"kind", "haar"}, {"group", box.group}, {"variant", variant_name(box.variant)}};
        } else {
            jb["payload"] = {{"kind", "const"}};
            if (box.has_data) {
                nlohmann::json data = nlohmann::json::array();
                for (const cdouble& v : box.payload.data)
                    data.push_back(nlohmann::json::array({v.real(), v.imag()}));
                jb["payload"]["data"] = std::move(data);
            }
        }
        j["boxes"].push_back(std::move(jb));
    }
    j["wires"] = nlohmann::json::array();
    for (const Wire& w : d.wires)
        j["wires"].push_back(nlohmann::json::array(
            {nlohmann::json::array({w.b1, w.d1}), nlohmann::json::array({w.b2, w.d2})}));
    return j;
}

Diagram diagram_from_json(const nlohmann::json& j) {
    Diagram d;
    for (const auto& js : j.at("spaces")) {
        Space s;
        s.id = js.at("id").get<std::string>();
        s.dim = js.at("dim").get<long>();
        if (js.contains("shape")) s.shape_tag = js.at("shape").get<std::string>();
        d.spaces.push_back(std::move(s));
    }
    for (const auto& jb : j.at("boxes")) {
        std::vector<Decoration> decs;
        for (const auto& jd : jb.at("decorations"))
            decs.push_back({jd.at("space").get<std::string>(),
                            shading_parse(jd.at("shading").get<std::string>())});
        const auto& payload = jb.at("payload");
        std::string kind = payload.at("kind").get<std::string>();
        std::string label = jb.value("label", "");
        if (kind == "haar") {
            d.boxes.push_back(Box::haar(label, std::move(decs),
                                        payload.at("group").get<std::string>(),
                                        variant_parse(payload.at("variant").get<std::string>())));
        } else if (kind == "const") {
            if (!payload.contains("data")) {
                d.boxes.push_back(Box::abstract(label, std::move(decs)));
            } else {
                std::vector<int> dims;
                for (const auto& dec : decs) {
                    const Space* sp = d.find_space(dec.space);
                    if (!sp) throw ValidationError("diagram json: unknown space " + dec.space);
                    dims.push_back(static_cast<int>(sp->dim));
                }
                Tensor t(dims);
                const auto& data = payload.at("data");
                if (data.size() != t.size())
                    throw ValidationError("diagram json: data length does not match axis dims");
                for (std::size_t i = 0; i < t.size(); ++i) {
                    const auto& v = data[i];
                    if (v.is_array())
                        t.data[i] = cdouble(v.at(0).get<double>(), v.at(1).get<double>());
                    else
                        t.data[i] = cdouble(v.get<double>(), 0.0);
                }
                d.boxes.push_back(Box::constant(label, std::move(decs), std::move(t)));
            }
        } else {
            throw ValidationError("diagram json: unknown payload kind " + kind);
        }
    }
    for (const auto& jw : j.at("wires")) {
        d.wire(jw.at(0).at(0).get<int>(), jw.at(0).at(1).get<int>(), jw.at(1).at(0).get<int>(),
               jw.at(1).at(1).get<int>());
    }
    return d;
}

}  // namespace haar
