#pragma once

#include <stdexcept>
#include <string>

namespace corona {

enum class Errc {
    bad_resolution,
    length_mismatch,
    small_norm,
    zero_poly,
    degree_too_small,
    rank_deficient,
    duplicate_nodes,
    alpha_range,
    near_zero_of_f,
    zero_f,
    domain_error,
    fail_sup_norm,
    fail_zero_free,
    fail_hypothesis,
    config_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

}  // namespace corona
