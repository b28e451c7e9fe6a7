#pragma once

#include <map>
#include <string>
#include <vector>

#include "haar/diagram.hpp"
#include "haar/rational.hpp"
#include "haar/tensor.hpp"

namespace haar {

/// A diagram computing a channel moment, together with everything needed to
/// evaluate its symbolic expansion: the Haar groups to eliminate, a dimension
/// prefactor (the input-state normalizations), and bindings for the constant
/// boxes that appear in trace words.
struct ModelDiagram {
    Diagram diagram;
    std::vector<std::string> groups;
    std::map<std::string, long> norm_exponents;
    std::map<std::string, RatMatrix> constants;
};

/// tr(Y^p) for Y = tr_k(U X U*). X is abstract unless a payload is given;
/// either way its label is "X", so pass an nk x nk binding when evaluating
/// the abstract form.
ModelDiagram rotated_model_diagram(long n, long k, int p);
ModelDiagram rotated_model_diagram(long n, long k, int p, const Tensor& x_payload);

/// tr(Z^p) for Z = (Phi^U tensor Phi^V)(E_n), U and V independent.
ModelDiagram independent_model_diagram(long n, long k, int p);

/// tr(Z^p) for Z = (Phi^U tensor Phi^{U-bar})(E_n); one Haar group of 2p
/// plain and 2p conjugated boxes.
ModelDiagram conjugate_model_diagram(long n, long k, int p);

/// The environment state e1 e1* as a k x k matrix.
Tensor e11_tensor(long k);
RatMatrix e11_rational(long k);

/// evaluate_sum(symbolic_moment(...)) times the normalization prefactor,
/// with dims taken from the diagram's spaces and `extra` merged over the
/// built-in constant bindings.
Rational evaluate_model(const ModelDiagram& md,
                        const std::map<std::string, RatMatrix>& extra = {});

}  // namespace haar
