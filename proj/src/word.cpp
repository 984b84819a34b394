#include "gsk/word.hpp"

#include <algorithm>
#include <unordered_map>

#include "gsk/symplectic.hpp"

namespace gsk {

GateWord inverse(const GateWord& w) {
  GateWord out;
  out.tokens.reserve(w.tokens.size());
  for (auto it = w.tokens.rbegin(); it != w.tokens.rend(); ++it)
    out.tokens.push_back({it->label, !it->inverted});
  return out;
}

GateWord concat(std::initializer_list<const GateWord*> parts) {
  GateWord out;
  std::size_t n = 0;
  for (const GateWord* p : parts) n += p->tokens.size();
  out.tokens.reserve(n);
  for (const GateWord* p : parts) out.tokens.insert(out.tokens.end(), p->tokens.begin(), p->tokens.end());
  return out;
}

Mat resolve(const GateWord& w, const TokenResolver& element, int n) {
  std::unordered_map<std::string, Mat> cache, icache;
  const Mat W = omega(n / 2);
  Mat acc = Mat::Identity(n, n);
  for (const GateToken& t : w.tokens) {
    auto it = cache.find(t.label);
    if (it == cache.end()) it = cache.emplace(t.label, element(t.label)).first;
    if (!t.inverted) {
      acc = acc * it->second;
      continue;
    }
    auto jt = icache.find(t.label);
    if (jt == icache.end()) jt = icache.emplace(t.label, Mat(W.transpose() * it->second.transpose() * W)).first;
    acc = acc * jt->second;
  }
  return acc;
}

nlohmann::json word_to_json(const GateWord& w) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& t : w.tokens) a.push_back(nlohmann::json::array({t.label, t.inverted}));
  return a;
}

GateWord word_from_json(const nlohmann::json& j) {
  GateWord w;
  for (const auto& t : j) {
    const auto& l = t.at(0);
    w.tokens.push_back({l.is_string() ? l.get<std::string>() : std::to_string(l.get<long>()), t.at(1).get<bool>()});
  }
  return w;
}

}  // namespace gsk
