#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tradeopt {

// Input that violates a documented contract. `path()` locates the offending
// field (JSON-pointer style) when the input came from a document.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& message, std::string path = {})
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        message_(message),
        path_(std::move(path)) {}

  const std::string& message() const noexcept { return message_; }
  const std::string& path() const noexcept { return path_; }

 private:
  std::string message_;
  std::string path_;
};

// A trade names a player id that does not resolve to the expected roster.
class UnknownPlayerError : public ValidationError {
 public:
  explicit UnknownPlayerError(std::string player_id, const std::string& detail = {})
      : ValidationError("unresolvable player id '" + player_id + "'" +
                        (detail.empty() ? std::string{} : " (" + detail + ")")),
        player_id_(std::move(player_id)) {}

  const std::string& player_id() const noexcept { return player_id_; }

 private:
  std::string player_id_;
};

class CandidateCapExceeded : public std::runtime_error {
 public:
  CandidateCapExceeded(std::uint64_t count, std::uint64_t cap)
      : std::runtime_error("trade enumeration refused: " + std::to_string(count) +
                           " candidates exceeds cap of " + std::to_string(cap)),
        count_(count),
        cap_(cap) {}

  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t count_;
  std::uint64_t cap_;
};

}  // namespace tradeopt
