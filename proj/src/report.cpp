#include "nsvosa/report.hpp"

#include "nsvosa/window.hpp"

namespace nsvosa {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(const Interval& i) {
  if (i.is_empty()) return "[]";
  auto end = [](std::int64_t v) {
    if (v <= -Interval::kInf) return std::string("-inf");
    if (v >= Interval::kInf) return std::string("inf");
    return std::to_string(v);
  };
  return "[" + end(i.lo) + "," + end(i.hi) + "]";
}

ComparisonReport ComparisonReport::pass(std::size_t checked, std::string detail) {
  ComparisonReport r;
  r.status = Status::Pass;
  r.checked = checked;
  r.detail = std::move(detail);
  return r;
}

ComparisonReport ComparisonReport::inconclusive(std::string detail) {
  ComparisonReport r;
  r.status = Status::Inconclusive;
  r.detail = std::move(detail);
  return r;
}

ComparisonReport ComparisonReport::fail(Witness w, std::string detail) {
  ComparisonReport r;
  r.status = Status::Fail;
  r.witnesses.push_back(std::move(w));
  r.detail = std::move(detail);
  return r;
}

ComparisonReport& ComparisonReport::merge(const ComparisonReport& o) {
  checked += o.checked;
  for (const auto& w : o.witnesses)
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(w);
  if (o.status == Status::Fail || status == Status::Fail) {
    status = Status::Fail;
  } else if (o.status == Status::Inconclusive) {
    status = Status::Inconclusive;
  }
  if (!o.detail.empty() && o.status != Status::Pass) {
    if (!detail.empty()) detail += "; ";
    detail += o.detail;
  }
  return *this;
}

}  // namespace nsvosa
