#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cfsgauge {

enum class Errc {
  singular_gram,
  signature_mismatch,
  not_hermitian,
  out_of_convergence_radius,
  not_symmetric,
  branch_cut,
  not_regular,
  signature_lost,
  too_far_from_base,
  invalid_signature,
  not_invertible,
  out_of_chart_domain,
  empty_cutoff,
  massless_normalization,
  too_few_modes,
  invalid_box,
  degenerate_chain,
  not_diagonal_kernel,
  dimension_mismatch,
  not_unitary,
  config_error,
  task_error,
};

std::string_view errc_name(Errc code);

// All library failures are reported through this type; code() identifies the
// failure class, what() carries the detail.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) { throw Error(code, detail); }

}  // namespace cfsgauge
