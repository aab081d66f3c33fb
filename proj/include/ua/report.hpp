#pragma once

#include <string>
#include <vector>

namespace ua {

enum class Verdict { pass, fail, skip };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skip: return "skip";
  }
  return "?";
}

struct ReportItem {
  std::string id;
  std::string statement;
  std::string anchor;  // short property name, stable across versions
  Verdict verdict = Verdict::pass;
  std::string witness;
};

struct Report {
  std::vector<ReportItem> items;

  ReportItem& add(std::string id, std::string statement, std::string anchor, bool ok,
                  std::string witness = {}) {
    items.push_back({std::move(id), std::move(statement), std::move(anchor),
                     ok ? Verdict::pass : Verdict::fail, std::move(witness)});
    return items.back();
  }
  ReportItem& skip(std::string id, std::string statement, std::string anchor, std::string reason) {
    items.push_back({std::move(id), std::move(statement), std::move(anchor), Verdict::skip, std::move(reason)});
    return items.back();
  }
  void append(const Report& other, const std::string& prefix = {}) {
    for (auto it : other.items) {
      if (!prefix.empty()) it.id = prefix + "." + it.id;
      items.push_back(std::move(it));
    }
  }
  bool all_pass() const {
    for (const auto& i : items)
      if (i.verdict == Verdict::fail) return false;
    return true;
  }
  const ReportItem* find(const std::string& id) const {
    for (const auto& i : items)
      if (i.id == id) return &i;
    return nullptr;
  }
  std::vector<const ReportItem*> failures() const {
    std::vector<const ReportItem*> out;
    for (const auto& i : items)
      if (i.verdict == Verdict::fail) out.push_back(&i);
    return out;
  }
};

template <class Seq>
std::string tuple_string(const Seq& s) {
  std::string out = "(";
  bool first = true;
  for (const auto& x : s) {
    if (!first) out += ",";
    out += std::to_string(x);
    first = false;
  }
  return out + ")";
}

}  // namespace ua
