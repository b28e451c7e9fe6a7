#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "haar/perm.hpp"
#include "haar/rational.hpp"
#include "haar/tensor.hpp"

#include "json.hpp"

namespace haar {

/// Index space with a fixed orthonormal basis. A closed loop over it counts
/// its dimension. shape_tag is display-only.
struct Space {
    std::string id;
    long dim = 1;
    std::string shape_tag = "round";
};

enum class Shading : uint8_t { black, white };

struct Decoration {
    std::string space;
    Shading shading = Shading::black;
};

enum class HaarVariant : uint8_t { U, Ubar, Ustar, Utrans };

/// A tensor node. Either a constant (dense payload, possibly data-less when
/// used purely symbolically) or a marked Haar unitary belonging to a group of
/// boxes that share one random matrix.
struct Box {
    std::string label;
    std::vector<Decoration> decorations;

    bool is_haar = false;
    std::string group;                       // haar payload
    HaarVariant variant = HaarVariant::U;    // haar payload
    Tensor payload;                          // constant payload
    bool has_data = false;

    static Box constant(std::string label, std::vector<Decoration> decs, Tensor data);
    static Box abstract(std::string label, std::vector<Decoration> decs);
    static Box haar(std::string label, std::vector<Decoration> decs,
                    std::string group, HaarVariant variant);
};

/// Undirected wire between two decoration endpoints (box index, decoration
/// index). Wires always join equal spaces; opposite shadings give the
/// canonical pairing and equal shadings the Bell pairing. Both contract as a
/// sum over one shared basis index.
struct Wire {
    int b1 = 0, d1 = 0, b2 = 0, d2 = 0;
};

struct Diagram {
    std::vector<Space> spaces;
    std::vector<Box> boxes;
    std::vector<Wire> wires;

    const Space* find_space(const std::string& id) const;
    long dim_of(const Decoration& dec) const;
    void wire(int b1, int d1, int b2, int d2) { wires.push_back({b1, d1, b2, d2}); }
};

struct ValidationReport {
    std::vector<std::string> errors;
    bool ok() const { return errors.empty(); }
};

ValidationReport validate(const Diagram& d);
void validate_or_throw(const Diagram& d);    // ValidationError listing every violation

/// Numeric contraction over all wires. Requires constant boxes with data.
/// Result axes are the free endpoints sorted by (box, decoration); a fully
/// wired diagram gives a rank-0 tensor.
Tensor contract(const Diagram& d);

// Stock constant boxes.
Box bell_vector(const Space& s);                     // sum_i e_i (x) e_i, two white legs
Box bell_form(const Space& s);                       // its dual, two black legs
Box max_entangled(const Space& s, bool normalized);  // rank-one pairing operator on s (x) s
Box identity_box(const Space& s);                    // white in, black out
Box ket_e1(const Space& s);                          // first basis vector
Box bra_e1(const Space& s);

/// Reduce adjoint/transpose marks: both flip every decoration shading on the
/// box; the adjoint keeps the conjugation, the transpose drops to plain.
/// Idempotent, contraction value preserved.
Diagram normalize_haar_boxes(const Diagram& d);

/// Substitute concrete unitaries for the Haar marks (one matrix per group),
/// producing an all-constant diagram. Handles all four variants directly.
Diagram instantiate(const Diagram& d, const std::map<std::string, Eigen::MatrixXcd>& us);

/// Pairing (alpha, beta) of the group's plain boxes with its conjugated
/// boxes: white legs follow alpha, black legs follow beta.
struct Removal {
    Permutation alpha, beta;
};

/// All (p!)^2 pairings when the group has p plain and p conjugated boxes
/// (after normalize_haar_boxes); empty when the counts differ.
std::vector<Removal> removals(const Diagram& d, const std::string& group);

/// Erase the group's boxes and reconnect: the t-th white leg of plain box i
/// joins the t-th white leg of conjugated box alpha(i), black legs via beta.
/// Wire chains that close on themselves become explicit loop boxes.
Diagram apply_removal(const Diagram& d, const std::string& group, const Removal& r);

/// One weighted diagram per removal; weight Wg(n_total, alpha beta^{-1}).
/// n_total must equal the group's total dimension.
std::vector<std::pair<Diagram, Rational>> expectation(const Diagram& d, const std::string& group,
                                                      long n_total);

/// One Weingarten factor: Wg evaluated at the product of the listed space
/// dimensions, on the given cycle type.
struct WgFactor {
    std::map<std::string, long> dim_exponents;
    CycleType arg;
};

/// One box visit inside a trace word. The box enters the product as its
/// bound matrix, transposed when the chain enters it through the black side.
struct TraceFactor {
    std::string label;
    bool transposed = false;
};

/// A term of the fully symbolic expansion: rational coefficient, a monomial
/// in space dimensions from the loops, trace words over constant-box labels,
/// and one Weingarten factor per eliminated group.
struct SymbolicWeight {
    Rational coeff = Rational(1);
    std::map<std::string, long> dim_exponents;
    std::vector<std::vector<TraceFactor>> trace_words;
    std::vector<WgFactor> wg;

    Rational evaluate(const std::map<std::string, long>& dims,
                      const std::map<std::string, RatMatrix>& constants = {}) const;
};

/// Eliminate the listed groups in order and read each terminal diagram off as
/// loops plus closed constant chains. The flattened sum is independent of the
/// group order.
std::vector<SymbolicWeight> symbolic_moment(const Diagram& d, const std::vector<std::string>& groups);

Rational evaluate_sum(const std::vector<SymbolicWeight>& terms,
                      const std::map<std::string, long>& dims,
                      const std::map<std::string, RatMatrix>& constants = {});

nlohmann::json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const nlohmann::json& j);

}  // namespace haar
