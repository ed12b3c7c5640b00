#pragma once

#include <string>
#include <vector>

#include "twodof/poly.hpp"
#include "twodof/ratfn.hpp"
#include "twodof/ratmat.hpp"

namespace twodof {

enum class InstabilityReason {
    kRightHalfPlaneRoot,
    kImaginaryAxisRoot,
    kImproper,  // pole at infinity; used by loop-map verdicts
};

std::string to_string(InstabilityReason r);

struct OffendingFactor {
    Poly factor;  // monic; 1 for kImproper
    InstabilityReason reason;
    std::string context;  // where it was found, e.g. "entry (1,2)"
};

/// "Stable" means every root strictly in the open left half-plane.
struct StabilityVerdict {
    bool stable = true;
    std::vector<OffendingFactor> offending;

    void add(OffendingFactor f);
    void merge(const StabilityVerdict& other, const std::string& context = {});
    std::string describe() const;
};

/// Routh array computed over the rationals. A row that vanishes entirely is
/// replaced by the derivative of its auxiliary polynomial; a zero leading
/// entry in a nonzero row stops the construction.
struct RouthArray {
    std::vector<std::vector<Rational>> rows;
    bool zero_row = false;          // auxiliary-polynomial substitution happened
    bool zero_pivot = false;        // construction stopped on a zero first entry
    int sign_changes = 0;           // first-column sign changes over completed rows
};
RouthArray routh_array(const Poly& p);

/// Throws std::domain_error for the zero polynomial.
StabilityVerdict is_hurwitz(const Poly& p);

StabilityVerdict is_stable(const RatFn& f);
StabilityVerdict is_stable(const RatMat& m);

bool is_rh_inf(const RatFn& f);
bool is_rh_inf(const RatMat& m);

}  // namespace twodof
