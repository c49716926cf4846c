#include <doctest.h>

#include "drifg/wavelet.hpp"
#include "oracles.hpp"

using namespace drifg;

TEST_CASE("analysis then synthesis is the identity") {
    for (WaveletFamily fam : {WaveletFamily::haar, WaveletFamily::db4}) {
        WaveletConfig cfg{fam, 3};
        ComplexImage u = oracles::random_image(32, 16, 101);
        ComplexImage back = wavelet_synthesis(wavelet_analysis(u, cfg), cfg);
        CHECK(rel_error(back, u) < 1e-10);

        SparseCoeffs x{oracles::random_image(32, 16, 102)};
        SparseCoeffs round = wavelet_analysis(wavelet_synthesis(x, cfg), cfg);
        CHECK(rel_error(round.coeffs, x.coeffs) < 1e-10);
    }
}

TEST_CASE("Parseval: the transform preserves the l2 norm") {
    WaveletConfig cfg{WaveletFamily::db4, 4};
    ComplexImage u = oracles::random_image(64, 64, 103);
    SparseCoeffs x = wavelet_analysis(u, cfg);
    CHECK(norm2(x.coeffs) == doctest::Approx(norm2(u)).epsilon(1e-10));
    CHECK(norm2(wavelet_synthesis(x, cfg)) == doctest::Approx(norm2(x.coeffs)).epsilon(1e-10));
}

TEST_CASE("synthesis is the adjoint of analysis") {
    WaveletConfig cfg{WaveletFamily::db4, 2};
    ComplexImage u = oracles::random_image(16, 16, 104);
    SparseCoeffs x{oracles::random_image(16, 16, 105)};
    const cplx lhs = inner(wavelet_analysis(u, cfg).coeffs, x.coeffs);
    const cplx rhs = inner(u, wavelet_synthesis(x, cfg));
    CHECK(std::abs(lhs - rhs) / (norm2(u) * norm2(x.coeffs)) < 1e-12);
}

TEST_CASE("constant image: all detail coefficients vanish") {
    WaveletConfig cfg{WaveletFamily::db4, 2};
    const cplx c{3.0, 1.5};
    ComplexImage u(16, 16, c);
    SparseCoeffs x = wavelet_analysis(u, cfg);
    // level-2 scaling subband is the 4x4 top-left corner
    double detail_energy = 0.0, scaling_energy = 0.0;
    for (std::size_t r = 0; r < 16; ++r)
        for (std::size_t cc = 0; cc < 16; ++cc) {
            const double e = std::norm(x.coeffs.at(r, cc));
            if (r < 4 && cc < 4) scaling_energy += e;
            else detail_energy += e;
        }
    CHECK(detail_energy < 1e-20);
    CHECK(scaling_energy == doctest::Approx(norm2(u) * norm2(u)).epsilon(1e-12));
}

TEST_CASE("haar level-1 matches the hand computation") {
    WaveletConfig cfg{WaveletFamily::haar, 1};
    ComplexImage u(2, 2);
    u.at(0, 0) = 1.0;
    u.at(0, 1) = 2.0;
    u.at(1, 0) = 3.0;
    u.at(1, 1) = 4.0;
    SparseCoeffs x = wavelet_analysis(u, cfg);
    CHECK(std::abs(x.coeffs.at(0, 0) - cplx{5.0}) < 1e-12);       // (1+2+3+4)/2
    CHECK(std::abs(x.coeffs.at(0, 1) - cplx{-1.0}) < 1e-12);      // horizontal detail
    CHECK(std::abs(x.coeffs.at(1, 0) - cplx{-2.0}) < 1e-12);      // vertical detail
    CHECK(std::abs(x.coeffs.at(1, 1) - cplx{0.0}) < 1e-12);
}

TEST_CASE("indivisible dims are rejected") {
    WaveletConfig cfg{WaveletFamily::db4, 3};
    ComplexImage u(12, 16); // 8 does not divide 12
    CHECK_THROWS_AS(wavelet_analysis(u, cfg), dimension_error);
    SparseCoeffs x{ComplexImage(12, 16)};
    CHECK_THROWS_AS(wavelet_synthesis(x, cfg), dimension_error);
}
