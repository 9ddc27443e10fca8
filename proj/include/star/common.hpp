#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace star {

// Discrete clock index. Within one cycle all reads happen before all writes.
using Cycle = std::int64_t;

// Storage discipline. Doubles as the compatibility tag on RCG edges.
enum class StorageKind { Register, Fifo, Lifo };
using CompatTag = StorageKind;

std::string_view to_string(StorageKind kind);
StorageKind parse_storage_kind(std::string_view text);

// Malformed or semantically invalid user input (constraint files, configs,
// netlists, generator parameters).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A generated artifact failed its own verification. Always an upstream bug.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace star
