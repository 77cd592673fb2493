#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace nsvosa {

enum class Status { Pass, Fail, Inconclusive };

const char* status_name(Status s);

struct Witness {
  std::vector<long> exponent;
  std::string lhs;
  std::string rhs;
};

struct ComparisonReport {
  Status status = Status::Inconclusive;
  std::size_t checked = 0;
  std::vector<Witness> witnesses;
  std::string detail;

  bool passed() const { return status == Status::Pass; }
  bool failed() const { return status == Status::Fail; }

  static ComparisonReport pass(std::size_t checked, std::string detail = {});
  static ComparisonReport inconclusive(std::string detail);
  static ComparisonReport fail(Witness w, std::string detail = {});

  // Folds another report into this one: fail dominates, then inconclusive.
  ComparisonReport& merge(const ComparisonReport& o);
};

constexpr std::size_t kMaxWitnesses = 8;

}  // namespace nsvosa
