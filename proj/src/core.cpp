#include <sysnet/core.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>

namespace sysnet {

void normalize_id_set(IdSet& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

Ratio Ratio::of(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw ValidationError("ratio: denominator must be positive");
  if (num < 0) throw ValidationError("ratio: negative value");
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  return Ratio{num / g, den / g};
}

Ratio Ratio::from_decimal(std::string_view text) {
  std::int64_t whole = 0;
  std::int64_t frac = 0;
  std::int64_t scale = 1;
  std::size_t i = 0;
  bool any_digit = false;
  for (; i < text.size() && text[i] != '.'; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("not a decimal number: '" + std::string(text) + "'");
    whole = whole * 10 + (text[i] - '0');
    any_digit = true;
  }
  if (i < text.size()) {
    ++i;  // skip '.'
    for (; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("not a decimal number: '" + std::string(text) + "'");
      if (scale > 1000000000000000LL)
        throw ParseError("too many decimal places: '" + std::string(text) + "'");
      frac = frac * 10 + (text[i] - '0');
      scale *= 10;
      any_digit = true;
    }
  }
  if (!any_digit) throw ParseError("not a decimal number: '" + std::string(text) + "'");
  return of(whole * scale + frac, scale);
}

std::string Ratio::decimal(int places) const {
  std::int64_t pow10 = 1;
  for (int i = 0; i < places; ++i) pow10 *= 10;
  // round half away from zero; num >= 0 by construction
  std::int64_t scaled = (num * pow10 * 2 + den) / (2 * den);
  std::string digits = std::to_string(scaled / pow10);
  if (places == 0) return digits;
  std::string frac = std::to_string(scaled % pow10);
  return digits + "." + std::string(places - static_cast<int>(frac.size()), '0') + frac;
}

std::string Ratio::compact() const {
  std::int64_t pow10 = 1;
  for (int places = 0; places <= 18; ++places) {
    if ((num * pow10) % den == 0) return decimal(places);
    if (pow10 > 100000000000000000LL / 10) break;
    pow10 *= 10;
  }
  return decimal(6);
}

Rule canonicalize(Rule rule) {
  normalize_id_set(rule.antecedent);
  normalize_id_set(rule.consequent);
  if (rule.antecedent.empty()) throw ValidationError("invalid rule: empty antecedent");
  if (rule.consequent.empty()) throw ValidationError("invalid rule: empty consequent");
  return rule;
}

bool rule_size_lex_less(const Rule& a, const Rule& b) {
  std::size_t sa = a.antecedent.size() + a.consequent.size();
  std::size_t sb = b.antecedent.size() + b.consequent.size();
  if (sa != sb) return sa < sb;
  return a < b;
}

std::size_t RuleHash::operator()(const Rule& rule) const {
  // FNV-1a over both sides with a separator between them
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  for (EntityId id : rule.antecedent) mix(id);
  mix(0xFFFFFFFFFFFFFFFFULL);
  for (EntityId id : rule.consequent) mix(id);
  return static_cast<std::size_t>(h);
}

std::string Thresholds::triple() const {
  return std::to_string(min_sup_count) + "-" + min_conf.compact() + "-" +
         std::to_string(min_stab_count);
}

void Thresholds::validate() const {
  if (min_sup_count < 1) throw ValidationError("min_sup_count must be >= 1");
  if (min_conf < Ratio::of(0, 1) || Ratio::of(1, 1) < min_conf)
    throw ValidationError("min_conf must be in [0,1]");
  if (min_stab_count < 1) throw ValidationError("min_stab_count must be >= 1");
}

}  // namespace sysnet
