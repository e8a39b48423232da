#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "potentials.hpp"

namespace virial {

// Flat key=value document; '#' starts a comment, blank lines are skipped.
using KeyValues = std::map<std::string, std::string, std::less<>>;

KeyValues parse_key_values(std::string_view text);

double parse_real(std::string_view key, std::string_view value);
int parse_int(std::string_view key, std::string_view value);
bool parse_bool(std::string_view key, std::string_view value);
/// Comma- or whitespace-separated reals.
std::vector<double> parse_real_list(std::string_view key, std::string_view value);
std::vector<int> parse_int_list(std::string_view key, std::string_view value);

/// Recognised keys: kind, kappa, lambda, omega, coeffs, xi.
/// kind is one of monomial, harmonic, quartic-anharmonic, even-polynomial,
/// polynomial; when absent it is inferred (coeffs -> even-polynomial,
/// omega -> quartic-anharmonic, otherwise monomial). Other keys are ignored.
PotentialSpec potential_spec_from_keys(const KeyValues& keys);

/// potential_spec_from_keys + validate.
Potential potential_from_keys(const KeyValues& keys);

}  // namespace virial
