#pragma once

#include <array>
#include <optional>

#include "tatefrob/frobenius.hpp"

namespace tatefrob {

// 2x2 matrix with entries reduced into [0, N)
using Mat2u = std::array<std::array<unsigned, 2>, 2>;

// the literal matrix of the base-field Frobenius on a torsion basis
struct TorsionMatrix {
    unsigned N = 0;
    Mat2u entries{};
    FieldPtr ext;  // field the basis lives in
    Point P, Q;    // the basis, over the base-changed curve
};

enum class Verdict { PASS, FAIL, OUT_OF_CONTRACT };

struct VerifyReport {
    Verdict verdict = Verdict::FAIL;
    unsigned N = 0;
    Mat2 tau;                           // the predicted integral matrix
    std::optional<TorsionMatrix> frob;  // absent for OUT_OF_CONTRACT
    std::optional<Mat2u> conjugator;    // witness when verdict == PASS
};

// brute-force matrix of Frobenius: images of a torsion basis resolved by
// exhaustive scan over the N^2 combinations
TorsionMatrix frobenius_on_torsion(const Curve& E, unsigned N);

// exhaustive search for U in GL2(Z/N) with U A = B U
std::optional<Mat2u> find_conjugator(unsigned N, const Mat2u& A, const Mat2u& B);
bool gl2_conjugate(unsigned N, const Mat2u& A, const Mat2u& B);

// reduce an integer matrix into [0, N)
Mat2u reduce_mat(const Mat2& M, unsigned N);

// compare the predicted matrix with the brute-force one up to conjugacy
VerifyReport verify_curve(const Curve& E, unsigned N);

}  // namespace tatefrob
