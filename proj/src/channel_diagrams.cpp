#include "haar/channel_diagrams.hpp"

#include <stdexcept>
#include <utility>

namespace haar {

namespace {

const std::vector<Decoration> kFourLegs = {
    {"n", Shading::white}, {"k", Shading::white}, {"n", Shading::black}, {"k", Shading::black}};

void add_spaces(Diagram& d, long n, long k) {
    d.spaces.push_back({"n", n, "round"});
    d.spaces.push_back({"k", k, "square"});
}

void check_params(long n, long k, int p) {
    if (n < 1 || k < 1 || p < 1) throw std::invalid_argument("model diagram: bad parameters");
}

// One channel band: forward box, environment matrix, adjoint box, wired to
// trace out the environment and chain the outputs cyclically. fwd/adj are
// the Haar variants of the forward and adjoint boxes.
void add_band(Diagram& d, long k, int p, const std::string& group, HaarVariant fwd,
              HaarVariant adj, std::vector<int>& fwd_idx, std::vector<int>& adj_idx) {
    std::vector<int> e1_idx;
    for (int m = 0; m < p; ++m) {
        fwd_idx.push_back(static_cast<int>(d.boxes.size()));
        d.boxes.push_back(Box::haar("U", kFourLegs, group, fwd));
        e1_idx.push_back(static_cast<int>(d.boxes.size()));
        d.boxes.push_back(Box::constant(
            "E1", {{"k", Shading::white}, {"k", Shading::black}}, e11_tensor(k)));
        adj_idx.push_back(static_cast<int>(d.boxes.size()));
        d.boxes.push_back(Box::haar("U", kFourLegs, group, adj));
    }
    for (int m = 0; m < p; ++m) {
        d.wire(fwd_idx[m], 3, e1_idx[m], 0);       // env column of the forward box
        d.wire(e1_idx[m], 1, adj_idx[m], 3);       // env column of the adjoint box
        d.wire(fwd_idx[m], 1, adj_idx[m], 1);      // env trace
        d.wire(adj_idx[m], 0, fwd_idx[(m + 1) % p], 0);  // output chain
    }
}

}  // namespace

Tensor e11_tensor(long k) {
    Tensor t(std::vector<int>{static_cast<int>(k), static_cast<int>(k)});
    t.data[0] = cdouble(1.0);
    return t;
}

RatMatrix e11_rational(long k) {
    RatMatrix m(static_cast<int>(k), static_cast<int>(k));
    m(0, 0) = Rational(1);
    return m;
}

ModelDiagram rotated_model_diagram(long n, long k, int p) {
    return rotated_model_diagram(n, k, p, Tensor{});
}

ModelDiagram rotated_model_diagram(long n, long k, int p, const Tensor& x_payload) {
    check_params(n, k, p);
    bool with_data = !x_payload.dims.empty();
    ModelDiagram md;
    add_spaces(md.diagram, n, k);
    for (int m = 0; m < p; ++m) {
        md.diagram.boxes.push_back(Box::haar("U", kFourLegs, "g", HaarVariant::U));
        if (with_data)
            md.diagram.boxes.push_back(Box::constant("X", kFourLegs, x_payload));
        else
            md.diagram.boxes.push_back(Box::abstract("X", kFourLegs));
        md.diagram.boxes.push_back(Box::haar("U", kFourLegs, "g", HaarVariant::Ubar));
    }
    auto u = [](int m) { return 3 * m; };
    auto x = [](int m) { return 3 * m + 1; };
    auto ub = [](int m) { return 3 * m + 2; };
    for (int m = 0; m < p; ++m) {
        md.diagram.wire(u(m), 2, x(m), 0);
        md.diagram.wire(u(m), 3, x(m), 1);
        md.diagram.wire(x(m), 2, ub(m), 2);
        md.diagram.wire(x(m), 3, ub(m), 3);
        md.diagram.wire(u(m), 1, ub(m), 1);
        md.diagram.wire(ub(m), 0, u((m + 1) % p), 0);
    }
    md.groups = {"g"};
    return md;
}

ModelDiagram independent_model_diagram(long n, long k, int p) {
    check_params(n, k, p);
    ModelDiagram md;
    add_spaces(md.diagram, n, k);
    std::vector<int> u, ub, v, vb;
    add_band(md.diagram, k, p, "u", HaarVariant::U, HaarVariant::Ubar, u, ub);
    add_band(md.diagram, k, p, "v", HaarVariant::U, HaarVariant::Ubar, v, vb);
    for (int m = 0; m < p; ++m) {
        md.diagram.wire(u[m], 2, v[m], 2);     // entangled input rows
        md.diagram.wire(ub[m], 2, vb[m], 2);   // entangled input columns
    }
    md.groups = {"u", "v"};
    md.norm_exponents = {{"n", -p}};
    md.constants = {{"E1", e11_rational(k)}};
    return md;
}

ModelDiagram conjugate_model_diagram(long n, long k, int p) {
    check_params(n, k, p);
    ModelDiagram md;
    add_spaces(md.diagram, n, k);
    std::vector<int> u, ub, v, vb;
    add_band(md.diagram, k, p, "g", HaarVariant::U, HaarVariant::Ubar, u, ub);
    // second channel uses the conjugate matrix: forward box U-bar, adjoint
    // box plain U, same group
    add_band(md.diagram, k, p, "g", HaarVariant::Ubar, HaarVariant::U, v, vb);
    for (int m = 0; m < p; ++m) {
        md.diagram.wire(u[m], 2, v[m], 2);
        md.diagram.wire(ub[m], 2, vb[m], 2);
    }
    md.groups = {"g"};
    md.norm_exponents = {{"n", -p}};
    md.constants = {{"E1", e11_rational(k)}};
    return md;
}

Rational evaluate_model(const ModelDiagram& md, const std::map<std::string, RatMatrix>& extra) {
    std::map<std::string, long> dims;
    for (const Space& s : md.diagram.spaces) dims[s.id] = s.dim;
    std::map<std::string, RatMatrix> constants = md.constants;
    for (const auto& [label, m] : extra) constants[label] = m;

    Rational out = evaluate_sum(symbolic_moment(md.diagram, md.groups), dims, constants);
    for (const auto& [id, e] : md.norm_exponents) out *= rat_pow(dims.at(id), e);
    return out;
}

}  // namespace haar
