#pragma once

// Text and JSON formats.
//
//   words      "x0 x1^-1 x3"          single spaces, round-trips exactly
//   elements   {"pos":[0,2],"neg":[]}
//   instances  {"s":..,"L":..,"w":..,"u1":..,"u2":..[,"secrets":{..},"K":..]}
//
// Parsers throw std::invalid_argument on malformed input.

#include <string>
#include <string_view>

#include "tlab/attacks.hpp"
#include "tlab/protocol.hpp"
#include "tlab/thompson.hpp"

namespace tlab {

std::string format_word(std::span<const Atom> word);
Word parse_word(std::string_view text);

std::string element_to_json(const NormalForm& a);
/// Rejects lists that are not a normal form.
NormalForm element_from_json(std::string_view text);

std::string instance_to_json(const KeyExchangeInstance& inst, bool include_secrets);
/// Secrets and K are filled in only when present in the input.
KeyExchangeInstance instance_from_json(std::string_view text);

std::string attack_result_to_json(const AttackResult& r, bool include_candidates = false);

}  // namespace tlab
