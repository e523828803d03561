#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pbb/arith/ast.hpp"
#include "pbb/common/rng.hpp"

namespace pbb::arith {

struct GenOptions {
    // Candidate programs per slot before giving up with GenerationExhausted.
    int max_attempts = 20000;
};

// Invented function name built from consonant-vowel syllables, e.g.
// "zibble", "Blaankle". Caller owns collision checking.
std::string pseudoword(Rng& rng);

// Generates a program whose measured length over `domain` is exactly
// `target_length`, total on the domain, with every value within the
// magnitude bound and both arms of every conditional reachable.
// Deterministic in the rng state.
ArithProgram generate_program(Rng& rng, std::string name, int target_length,
                              const InputDomain& domain, const GenOptions& options = {});

// Convenience overload: seeds its own rng and picks a fresh pseudoword.
ArithProgram generate_program(std::uint64_t seed, int target_length, const InputDomain& domain,
                              const GenOptions& options = {});

// A corpus with per-length counts differing by at most one, distinct names,
// distinct bodies, deterministic for the seed.
std::vector<ArithProgram> generate_corpus(std::uint64_t seed, int n_programs,
                                          const std::vector<int>& lengths,
                                          const InputDomain& domain,
                                          const GenOptions& options = {});

} // namespace pbb::arith
