#pragma once

#include "twodof/factor.hpp"
#include "twodof/stability.hpp"

namespace twodof {

/// Sign conventions: the loop is u = Cy*y + Cr*r (positive feedback), so the
/// return difference is I - Cy*P.
///
/// Holds the polynomial Bezout pair x1*d + x2*n = I together with the RH-inf
/// doubly coprime data used by the Youla parametrization:
///   u*n' + v*d' = I,  p = n'*d'^{-1} = dl'^{-1}*nl'.
struct DoublyCoprime {
    PolyMat n, d;
    PolyMat nl, dl;
    PolyMat x1, x2;
    StableMFD right;
    StableLeftMFD left;
};

struct TwoDofController {
    RatMat cy;
    RatMat cr;
    StabilityVerdict certificate;
};

/// Throws std::domain_error when (n, d) is not right coprime and
/// std::invalid_argument for shift <= 0.
DoublyCoprime solve_bezout(const RightMFD& mfd, const Rational& shift = 1);

/// Cy = -(v - k*nl')^{-1} (u + k*dl') for a stable proper m x p parameter k.
/// Throws std::invalid_argument if k is not in RH-inf and DesignObstruction
/// when v - k*nl' has no proper inverse.
RatMat youla_controller(const DoublyCoprime& dc, const RatMat& k);

/// All four maps (I-CyP)^{-1}, (I-CyP)^{-1}Cy, P(I-CyP)^{-1}, P(I-CyP)^{-1}Cy
/// must be proper and stable. Throws IllPosedLoop when I - Cy*P is singular
/// or has an improper inverse, std::invalid_argument on dimension mismatch.
StabilityVerdict is_internally_stabilizing(const RatMat& p, const RatMat& cy);

/// I - Cy*P, with the dimension checks shared by the closed-loop code.
RatMat return_difference(const RatMat& p, const RatMat& cy);

/// Cr = (I - Cy*P)*D*X so that y = N*X*r and u = D*X*r. Throws
/// DesignObstruction (relative degree) if the result is improper.
RatMat cr_from_x(const RatMat& p, const RatMat& cy, const RightMFD& mfd, const RatMat& x);
/// Same with the RH-inf factors: Cr = (I - Cy*P)*D'*X'.
RatMat cr_from_x(const RatMat& p, const RatMat& cy, const StableMFD& mfd, const RatMat& xprime);

/// C = [(I + L*N)*D^{-1}]^{-1} [L, X]. Every violated precondition is
/// collected into one DesignObstruction.
TwoDofController all_controllers_from_LX(const RightMFD& mfd, const RatMat& l, const RatMat& x);
/// Same with L', X' over the RH-inf factors N', D'.
TwoDofController all_controllers_from_LX(const StableMFD& mfd, const RatMat& lprime, const RatMat& xprime);

}  // namespace twodof
