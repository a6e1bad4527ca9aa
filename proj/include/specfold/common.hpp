#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace specfold {

// One error kind per failure contract of the library surface.  Kinds in the
// Math group signal a violated mathematical guarantee (falsifiers, guards);
// the others are input problems.
enum class ErrorKind {
  Invalid,         // malformed input data (validation)
  Io,              // file I/O
  Inconsistent,    // linear system has no solution
  Disconnected,    // quiver not connected
  Cyclic,          // quiver has an oriented cycle
  NotDynkin,       // diagram is not a Dynkin diagram
  TruncationHit,   // graded construction did not terminate below the cap
  TableMismatch,   // computed permutation disagrees with the closed form
  NotExact,        // resolution has homology where none is allowed
  NotAlmostKoszul, // linear-resolution certification failed
  MixedStarDegree, // differential component not star-homogeneous
  NotChainMap,     // squares of a claimed chain map do not commute
  NotWellDefined,  // morphism does not preserve the defining relations
  NoFunctional,    // no nondegenerate Frobenius functional exists
  NotHomogeneous,  // factor is not l-homogeneous (or l values differ)
  HomologyLeak,    // interior homology of a product complex is nonzero
  DimensionMismatch, // two constructions of the same algebra disagree
  SignError,       // a total complex failed d*d = 0
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

const char* error_kind_name(ErrorKind k);

// Deterministic xorshift RNG for property tests and seeded sampling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    s_ ^= s_ << 13;
    s_ ^= s_ >> 7;
    s_ ^= s_ << 17;
    return s_;
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

 private:
  std::uint64_t s_;
};

}  // namespace specfold
