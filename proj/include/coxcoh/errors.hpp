#pragma once

#include <stdexcept>
#include <string>

namespace coxcoh {

enum class errc {
  non_symmetric,
  bad_diagonal,
  bad_entry,
  unknown_generator,
  resource_limit,
  not_spherical,
  not_nested,
  out_of_trust_radius,
  not_finite,
  bad_incidence,
  mirror_not_subcomplex,
  not_a_subcomplex,
  non_spherical_mirror_intersection,
  not_right_angled_spherical,
  zero_denominator,
  parse_error,
  validation_error,
  verification_failure,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::non_symmetric: return "NonSymmetric";
    case errc::bad_diagonal: return "BadDiagonal";
    case errc::bad_entry: return "BadEntry";
    case errc::unknown_generator: return "UnknownGenerator";
    case errc::resource_limit: return "ResourceLimit";
    case errc::not_spherical: return "NotSpherical";
    case errc::not_nested: return "NotNested";
    case errc::out_of_trust_radius: return "OutOfTrustRadius";
    case errc::not_finite: return "NotFinite";
    case errc::bad_incidence: return "BadIncidence";
    case errc::mirror_not_subcomplex: return "MirrorNotSubcomplex";
    case errc::not_a_subcomplex: return "NotASubcomplex";
    case errc::non_spherical_mirror_intersection: return "NonSphericalMirrorIntersection";
    case errc::not_right_angled_spherical: return "NotRightAngledSpherical";
    case errc::zero_denominator: return "ZeroDenominator";
    case errc::parse_error: return "ParseError";
    case errc::validation_error: return "ValidationError";
    case errc::verification_failure: return "VerificationFailure";
    case errc::internal: return "Internal";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace coxcoh
