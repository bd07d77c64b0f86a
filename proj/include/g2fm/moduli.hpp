#pragma once

#include "g2fm/exalg.hpp"
#include "g2fm/field.hpp"
#include "g2fm/g2core.hpp"
#include "g2fm/quaternion.hpp"
#include "g2fm/rep.hpp"

#include <map>
#include <string>
#include <vector>

namespace g2fm {

// phi_hat_v = *(phi ^ iota_{e_v} Theta), one 1-form per tangent direction.
VectorValuedForm hat_three_form(const Form& phi);
// beta_hat_v = iota_beta iota_{e_v} Theta, contracting beta into two form slots.
VectorValuedForm hat_two_form(const Form& beta);

// int Omega(u1, u2, u3) ^ Theta with Omega(u1, u2, u3) = sum_{abc} Omega_{abc} u1_a ^ u2_b ^ u3_c.
Rational omega_pairing(const VectorValuedForm& u1, const VectorValuedForm& u2, const VectorValuedForm& u3);

// C_M on constant 3-forms of a flat T^7 in the G2 layout.
Rational cubic_tensor(const Form& phi1, const Form& phi2, const Form& phi3);

struct YukawaValues {
    Rational y, g, f;
    Rational norm;         // int phi ^ *phi
    bool has_ratio = false;
    Rational ratio;        // g / norm when norm != 0
};

// Throws unless phi lies in Lambda^3_27.
YukawaValues yukawa_suite(const Form& phi);

// int beta1 ^ beta2 ^ Omega.
Rational q_pairing(const Form& beta1, const Form& beta2);
// int Omega(beta1_hat, beta2_hat, beta3_hat) ^ Theta.
Rational c_prime(const Form& beta1, const Form& beta2, const Form& beta3);

struct BFieldCouplings {
    Rational q;
    Rational c_prime;
};
BFieldCouplings bfield_couplings(const Form& beta1, const Form& beta2, const Form& beta3);

// Weights per sorted degree signature, e.g. "223"; missing entries default to 1.
using EnlargedWeights = std::map<std::string, Rational>;

// Dispatch over the sorted degree signature of three classes from H^3_27 + H^2_14 + H^0:
//   333 -> C_M, 223 -> int b1^b2^phi, 222 -> C'_M, 033 -> c int phi^*phi', 022 -> c Q,
//   003 -> c c' int phi^Theta, 000 -> c c' c'' covolume.
Rational enlarged_yukawa(const std::vector<Form>& args, const EnlargedWeights& weights = {});
std::string degree_signature(const std::vector<Form>& args);

enum class FlatModel { BdlT7, AssT3T4, CoaT3T4 };
FlatModel parse_flat_model(const std::string& name);
std::string to_string(FlatModel m);

struct FormComparison {
    Form computed;
    Form expected;
    Rational scale;          // least-squares scale <computed, expected> / <expected, expected>
    Rational residual;       // max |computed - scale * expected| over components
    bool match = false;      // residual 0 and scale > 0
};

struct FlatModuliReport {
    FlatModel model;
    FramePtr moduli;  // identified dual flat G2 manifold
    FormComparison omega;
    FormComparison theta;
    std::map<std::string, std::string> conventions;
    int conventions_tried = 0;
};

// Evaluates the defining integrals of the moduli 3- and 4-forms on a basis of tangent vectors of
// the flat model and compares them with the calibration forms of the dual flat manifold.
//   bdl-T7: tangents are constant 1-forms on T^7, identified with T^7*.
//   ass-T3xT4: H^1(T^3) + Ker D = H, identified with T^3* x T^4.
//   coa-T3xT4: H^2_+(T^4) + H^1(T^4), identified with T^3 x T^4*.
// Free signs of the spinor and bracket models are pinned by a fixed-order search; the chosen
// set is reported.
FlatModuliReport flat_moduli_forms(FlatModel model);

FormComparison compare_forms(const Form& computed, const Form& expected);

// Spinor model on Ker D of a flat T^3: Clifford action of dx^i is multiplication by i, j, k.
struct SpinorConventions {
    bool left = true;        // left or right multiplication
    bool conjugate = true;   // apply quaternion conjugation to the spinor arguments
    int star_sign = 1;       // orientation of *_A on 2-forms of the fibre
    int det_sign = 1;
};
Quaternion clifford(int i, const Quaternion& q, const SpinorConventions& c = {});

// Coassociative fibre model: H^2_+ generators and the bracket of 2-forms through so(4).
struct CoaConventions {
    bool iota_basis = true;  // phi_i = iota_{d_x^i} Omega |_C, otherwise dy^{01}+dy^{23}, ...
    Rational lambda = 1;     // scale of the phi generators
    int bracket_sign = 1;
};
Form so4_bracket(const Form& a, const Form& b, int sign = 1);
std::vector<Form> coa_generators(const CoaConventions& c);

// Lie-algebra valued tangent vector: a constant form tensored with a gauge generator.
struct AdForm {
    Form form;
    std::vector<std::vector<Rational>> generator;  // square matrix
};

enum class CycleKind { Ass, Coa, Bdl };
CycleKind parse_cycle_kind(const std::string& name);

// Cubic tensors of the three moduli spaces for decomposable ad-valued arguments:
//   ass: tr([X,Y] Z) int_A a ^ b ^ c;  coa: tr(X [Y,Z]) int_C p ^ a ^ b;
//   bdl: tr(X [Y,Z]) int_M a ^ b ^ c ^ Theta.
// Throws for non-abelian (rank > 1) generators.
Rational cycle_moduli_cubic(CycleKind kind, const std::vector<AdForm>& args);
// tr(X [Y, Z]) with X, Y, Z generic symbolic 1x1 matrices, expanded as a polynomial.
Poly abelian_bracket_expansion();

}  // namespace g2fm
