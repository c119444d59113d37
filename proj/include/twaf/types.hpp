#pragma once

#include "twaf/relative.hpp"

#include <memory>

namespace twaf {

// A fully assembled supported type: absolute Chevalley system with
// normalised signs, the Galois action, and the relative datum with its
// level sets.  Instances are built once and cached by name.
struct TwistedType {
    std::string name;  // canonical ASCII Kac name, e.g. "A2~2", "C3~1", "A1x2"
    std::shared_ptr<ChevalleySystem> chevalley;
    SteinbergSigns sigma_signs;
    SteinbergSigns iota_signs;  // identity table when the group is cyclic
    std::shared_ptr<RelativeRootDatum> datum;

    int twist_order() const { return datum->twist_order(); }
    bool reduced() const;
};

// Parses "Xn~r" (also "Xn^(r)") and the restriction-of-scalars names
// "A1x2", "A1x3", "A2x2", "A2x3"; throws std::invalid_argument with a
// helpful message for malformed or unsupported names.
const TwistedType& get_type(const std::string& name);

std::vector<std::string> supported_type_names();

// the Tits 2-power exponent <varpi_gamma^vee, alpha> per absolute root,
// where gamma is the sum of the first-type liftings of the multipliable
// simple relative roots; identically zero for reduced relative systems
std::vector<int> tits_exponents_absolute(const TwistedType& T);

// chi_+(a) for a relative root: 1 when the system is non-reduced and a is
// positive, else 0; the multipliable coordinates rescale by (2^chi u, 4^chi v)
int tits_exponent_relative(const TwistedType& T, const QVec& a);

}  // namespace twaf
