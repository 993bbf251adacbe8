#include "tatefrob/oracle.hpp"

#include <map>

#include "tatefrob/stats.hpp"

namespace tatefrob {

namespace {

// deterministic encoding of a point for table lookups
std::pair<std::vector<uint64_t>, std::vector<uint64_t>> key_of(const Point& pt) {
    if (pt.infinity) return {{}, {1}};
    return {pt.x.coeffs(), pt.y.coeffs()};
}

}  // namespace

TorsionMatrix frobenius_on_torsion(const Curve& E, unsigned N) {
    TorsionBasis tb = E.torsion_basis(N);
    const mpz_class q = E.field()->cardinality();

    // all N^2 combinations i*P + j*Q, for resolving images by exhaustive scan
    std::map<std::pair<std::vector<uint64_t>, std::vector<uint64_t>>, std::pair<unsigned, unsigned>>
        combos;
    Point iP = Point::at_infinity();
    for (unsigned i = 0; i < N; ++i) {
        Point r = iP;
        for (unsigned j = 0; j < N; ++j) {
            combos.emplace(key_of(r), std::make_pair(i, j));
            r = tb.curve.add(r, tb.Q);
        }
        iP = tb.curve.add(iP, tb.P);
    }

    auto image_coords = [&](const Point& pt) {
        Point img = pt.infinity
                        ? pt
                        : Point::affine(frobenius_power(pt.x, q), frobenius_power(pt.y, q));
        auto it = combos.find(key_of(img));
        if (it == combos.end())
            throw Error(errc::BasisFailure, "Frobenius image escapes the torsion basis span");
        return it->second;
    };

    auto [a, b] = image_coords(tb.P);
    auto [c, d] = image_coords(tb.Q);

    TorsionMatrix out;
    out.N = N;
    out.entries = Mat2u{{{a, c}, {b, d}}};
    out.ext = tb.ext;
    out.P = tb.P;
    out.Q = tb.Q;

    // the reduced Weil polynomial constrains every Frobenius matrix
    unsigned long tr = (static_cast<unsigned long>(a) + d) % N;
    unsigned long det =
        ((static_cast<unsigned long>(a) * d) % N + static_cast<unsigned long>(N) * N -
         (static_cast<unsigned long>(c) * b) % N) %
        N;
    if (tr != mpz_fdiv_ui(E.trace().get_mpz_t(), N) || det != mpz_fdiv_ui(q.get_mpz_t(), N))
        throw Error(errc::InternalInconsistency,
                    "brute-force Frobenius matrix violates the Weil polynomial reduction");
    return out;
}

Mat2u reduce_mat(const Mat2& M, unsigned N) {
    Mat2u out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out[i][j] = static_cast<unsigned>(mpz_fdiv_ui(M[i][j].get_mpz_t(), N));
    return out;
}

std::optional<Mat2u> find_conjugator(unsigned N, const Mat2u& A, const Mat2u& B) {
    auto mul = [N](const Mat2u& X, const Mat2u& Y) {
        Mat2u Z;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                Z[i][j] = (X[i][0] * Y[0][j] + X[i][1] * Y[1][j]) % N;
        return Z;
    };
    auto gcd = [](unsigned x, unsigned y) {
        while (y) {
            unsigned t = x % y;
            x = y;
            y = t;
        }
        return x;
    };
    for (unsigned u0 = 0; u0 < N; ++u0)
        for (unsigned u1 = 0; u1 < N; ++u1)
            for (unsigned u2 = 0; u2 < N; ++u2)
                for (unsigned u3 = 0; u3 < N; ++u3) {
                    unsigned det = (u0 * u3 % N + N * N - u1 * u2 % N) % N;
                    if (gcd(det, N) != 1) continue;
                    Mat2u U{{{u0, u1}, {u2, u3}}};
                    if (mul(U, A) == mul(B, U)) return U;
                }
    return std::nullopt;
}

bool gl2_conjugate(unsigned N, const Mat2u& A, const Mat2u& B) {
    return find_conjugator(N, A, B).has_value();
}

VerifyReport verify_curve(const Curve& E, unsigned N) {
    if (N < 1) throw Error(errc::BadTorsionLevel, "torsion level must be >= 1");
    FrobeniusData data = frobenius_data(E);
    VerifyReport report;
    report.N = N;
    report.tau = data.tau;
    if (data.classification == CurveClass::SPECIAL && N % 2 == 0) {
        report.verdict = Verdict::OUT_OF_CONTRACT;
        return report;
    }
    report.frob = frobenius_on_torsion(E, N);
    report.conjugator = find_conjugator(N, report.frob->entries, reduce_mat(data.tau, N));
    report.verdict = report.conjugator ? Verdict::PASS : Verdict::FAIL;
    return report;
}

}  // namespace tatefrob
