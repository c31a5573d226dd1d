#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace deltachow {

// Mathematical / resource failure with a stable machine-readable code.
// Codes are part of the CLI contract: tooling matches on them.
class MathError : public std::runtime_error {
 public:
  MathError(std::string code, const std::string& detail)
      : std::runtime_error(detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& detail, std::size_t position)
      : std::runtime_error(detail), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Cooperative resource guard threaded through the long-running engines.
// Checked at safe points; a breach surfaces as MathError("resource_limit").
class ResourceGuard {
 public:
  ResourceGuard() = default;

  void set_deadline(double seconds) {
    deadline_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(seconds));
    has_deadline_ = true;
  }
  void set_max_terms(std::uint64_t n) { max_terms_ = n; }
  void set_max_basis(std::uint64_t n) { max_basis_ = n; }

  std::uint64_t max_terms() const { return max_terms_; }
  std::uint64_t max_basis() const { return max_basis_; }

  void check_deadline() const {
    if (has_deadline_ && std::chrono::steady_clock::now() > deadline_)
      throw MathError("resource_limit", "deadline exceeded");
  }
  void check_terms(std::uint64_t n) const {
    if (n > max_terms_)
      throw MathError("resource_limit",
                      "monomial count ceiling exceeded (" + std::to_string(n) + ")");
  }
  void check_basis(std::uint64_t n) const {
    if (n > max_basis_)
      throw MathError("resource_limit",
                      "basis size ceiling exceeded (" + std::to_string(n) + ")");
  }

  static ResourceGuard& unlimited() {
    static ResourceGuard g;
    return g;
  }

 private:
  bool has_deadline_ = false;
  std::chrono::steady_clock::time_point deadline_{};
  std::uint64_t max_terms_ = 5'000'000;
  std::uint64_t max_basis_ = 5'000;
};

}  // namespace deltachow
