#pragma once

#include <string>
#include <vector>

#include "coal/chain.hpp"
#include "coal/nblock.hpp"
#include "coal/spectral.hpp"

#include <json.hpp>

namespace coal {

// Deterministic key order keeps emitted reports byte-stable.
using Json = nlohmann::ordered_json;

/// Scalars are emitted with 17 significant digits throughout.
std::string format_scalar(double x);

/// Parses { "states": [labels], "transition": [[rows]] }. Labels must be
/// unique. Throws NotStochastic / NotMixing / std::runtime_error on bad input.
MarkovChain chain_from_json(const Json& j);
MarkovChain load_chain(const std::string& path);

Json chain_to_json(const MarkovChain& chain);

/// n-block chain in the same schema, words as hyphen-joined labels.
Json nblock_to_json(const NBlockChain& nb);

Json summary_to_json(const SpectralSummary& s);

}  // namespace coal
