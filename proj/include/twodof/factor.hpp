#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "twodof/polymat.hpp"
#include "twodof/ratmat.hpp"

namespace twodof {

/// P = n * d^{-1} with (n, d) right coprime and d column reduced.
struct RightMFD {
    PolyMat n;  // p x m
    PolyMat d;  // m x m
};

/// P = dl^{-1} * nl with (dl, nl) left coprime and dl row reduced.
struct LeftMFD {
    PolyMat dl;  // p x p
    PolyMat nl;  // p x m
};

/// Right coprime factorization over RH-infinity obtained by dividing column j
/// of (n, d) by (s + shift)^{delta_j}, delta_j the j-th column degree of d.
/// The stored witness satisfies u * nprime + v * dprime = I with u, v stable
/// and proper.
struct StableMFD {
    RightMFD base;
    Rational shift;
    PolyMat divisor;  // diag((s + shift)^{delta_j})
    RatMat nprime;
    RatMat dprime;
    RatMat u;
    RatMat v;
};

/// Left counterpart: row i of (dl, nl) divided by (s + shift)^{rho_i}.
struct StableLeftMFD {
    LeftMFD base;
    Rational shift;
    PolyMat divisor;
    RatMat dlprime;
    RatMat nlprime;
};

struct ZeroEntry {
    Poly factor;                              // exact factor holding this root
    int multiplicity = 1;
    std::optional<Rational> exact;            // set when the root is rational
    std::complex<double> location;
    bool unstable = false;                    // Re >= 0
    std::vector<std::vector<Rational>> exact_directions;
    std::vector<std::vector<std::complex<double>>> directions;
};

/// Zeros are the roots of the monic gcd of the maximal nonvanishing minors
/// of n; zero directions are left null vectors of n at the zero. Poles are
/// the roots of det d with right null vectors of d as directions.
struct ZeroReport {
    std::size_t normal_rank = 0;
    Poly zero_polynomial;
    Poly pole_polynomial;
    std::vector<ZeroEntry> zeros;
    std::vector<ZeroEntry> poles;

    std::vector<ZeroEntry> unstable_zeros() const;
    std::vector<ZeroEntry> unstable_poles() const;
};

/// Throws ImproperError for an improper plant.
RightMFD right_coprime_mfd(const RatMat& p);
LeftMFD left_coprime_mfd(const RatMat& p);

/// Throws std::invalid_argument on dimension mismatch.
bool is_right_coprime(const PolyMat& n, const PolyMat& d);
bool is_left_coprime(const PolyMat& dl, const PolyMat& nl);

/// n * d^{-1}
RatMat plant_of(const RightMFD& mfd);
/// dl^{-1} * nl
RatMat plant_of(const LeftMFD& mfd);
RatMat plant_of(const StableMFD& mfd);

/// Throws std::invalid_argument for shift <= 0 and std::domain_error when d is
/// not column reduced.
StableMFD stable_mfd(const RightMFD& mfd, const Rational& shift);
StableLeftMFD stable_left_mfd(const LeftMFD& mfd, const Rational& shift);

ZeroReport zeros_and_poles(const RightMFD& mfd);

}  // namespace twodof
