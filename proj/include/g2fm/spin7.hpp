#pragma once

#include "g2fm/exalg.hpp"
#include "g2fm/g2core.hpp"
#include "g2fm/quaternion.hpp"
#include "g2fm/rep.hpp"

#include <array>
#include <string>
#include <vector>

namespace g2fm {

// Coordinates x0..x3, y0..y3 at indices 0..7, orientation dx^{0123}dy^{0123}.
FramePtr spin7_frame();

// -dy^{0123} - dx^{0123} - (dx^{10}+dx^{23})(dy^{10}+dy^{23}) - (dx^{20}+dx^{31})(dy^{20}+dy^{31})
//   - (dx^{30}+dx^{12})(dy^{30}+dy^{12}).
Form theta_z(const FramePtr& frame = spin7_frame());

// Stabilizer of Theta_Z in so(8), computed once.
const std::vector<RMatrix>& spin7_algebra();

// beta -> *(Theta_Z ^ beta) on 2-forms: 3 on Lambda^2_7, -1 on Lambda^2_21.
RMatrix spin7_two_form_operator();
// Degree 2: {7, 21}; degree 4: {1, 7, 27, 35}.
const std::vector<LabeledProjector>& spin7_projectors(int degree);
std::vector<LabeledComponent> decompose_s7(const Form& a);

// phi_hat_v = *(phi ^ iota_{e_v} Theta_Z).
VectorValuedForm hat_four_form(const Form& phi);
// int Theta_Z(phi1_hat, .., phi4_hat) ^ Theta_Z.
Rational quartic_tensor(const Form& phi1, const Form& phi2, const Form& phi3, const Form& phi4);

CalibrationVerdict calibrate_cayley(const Plane& p);

// *F + Theta_Z ^ F + F^3/6.
template <class T>
BasicForm<T> deformed_dt8_residual(const BasicForm<T>& f, const BasicForm<T>& theta) {
    BasicForm<T> f3 = wedge(wedge(f, f), f);
    return hodge(f) + wedge(theta, f) + (T(1) / T(6)) * f3;
}
Form deformed_dt8_residual(const Form& f);

enum class ReductionKind { G2Circle, CY4 };
ReductionKind parse_reduction(const std::string& name);

struct ReductionReport {
    ReductionKind kind;
    Rational mismatch;          // g2-circle: max |Omega ^ dt - Theta - Theta_Z|
    int stabilizer_dim = 0;     // cy4
    Rational self_dual_defect;  // cy4: max |*gamma - gamma|
    Rational square_ratio;      // cy4: gamma ^ gamma / vol
    bool pass = false;
};
ReductionReport reduction_check(ReductionKind kind);

// Flat C^4 with z^i = x^i + i y^i.
Form cy4_kahler();
Form cy4_re_omega();
// -omega^2/2 + Re Omega.
Form cy4_candidate();

struct HodgeTypeReport {
    int primitive_31 = 0;   // real primitive (3,1)+(1,3)
    int omega_11 = 0;       // omega ^ primitive (1,1)
    int span = 0;           // dim of their sum
    int piece_35 = 0;       // 35-dimensional piece of the candidate's stabilizer
    int intersection = 0;   // dim of span intersected with the 35-piece
    bool match = false;
};
HodgeTypeReport hodge_type_bookkeeping();

// Tangent space R^4 + H of the Cayley moduli of a flat T^4 fibre C = span(d_y0..d_y3):
// indices 0..3 are 1-forms dy^0..dy^3, indices 4..7 the spinors 1, i, j, k.
// hat_lift sends dy^{01}+dy^{23}, dy^{02}+dy^{31}, dy^{03}+dy^{12} to i, j, k.
Quaternion hat_lift(const Form& two_form_on_c);
Form cayley_moduli_form();
Rational cayley_moduli_four_form(const std::array<std::vector<Rational>, 4>& tangents);

// Principal symbols of the deformation complexes at a covector xi.
struct SymbolComplexReport {
    std::vector<int> dims;   // spaces of the complex
    std::vector<int> ranks;  // maps between consecutive spaces
    bool compositions_vanish = false;
    bool exact = false;
};
// 0 -> Lambda^0 -> Lambda^1 -> Lambda^6 -> Lambda^7 -> 0 with xi ^, xi ^ . ^ Theta, xi ^.
SymbolComplexReport g2_symbol_complex(const std::vector<Rational>& xi);
// 0 -> Lambda^0 -> Lambda^1 -> Lambda^2_7 -> 0 with xi ^ and pi_7(xi ^ .).
SymbolComplexReport spin7_symbol_complex(const std::vector<Rational>& xi);

struct FourManifoldInvariants {
    std::string name;
    int signature = 0;
    int euler = 0;
};
// Known values for "T4" and "K3"; throws otherwise.
FourManifoldInvariants lookup_four_manifold(const std::string& name);
// 3 tau + 2 chi.
int hitchin_defect(const FourManifoldInvariants& m);

}  // namespace g2fm
