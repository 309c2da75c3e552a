#include "jetdbar/form.hpp"

#include <bit>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "jetdbar/parse.hpp"

namespace jetdbar {

namespace gen {

std::string name(int bit, const NameTable& names) {
  if (bit < kFrameBase) {
    Var v = Var::from_slot(bit);
    return "d" + names.name(v.kind) + std::to_string(v.index + 1);
  }
  if (bit < kDualBase) return "e" + std::to_string(bit - kFrameBase + 1);
  return "es" + std::to_string(bit - kDualBase + 1);
}

int lookup(const std::string& token, const NameTable& names) {
  for (int b = 0; b < kCount; ++b) {
    if (name(b, names) == token) return b;
  }
  return -1;
}

}  // namespace gen

int wedge_sign(std::uint64_t a, std::uint64_t b) {
  if (a & b) return 0;
  int inversions = 0;
  for (std::uint64_t rest = b; rest; rest &= rest - 1) {
    int y = std::countr_zero(rest);
    inversions += std::popcount(a >> (y + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

std::vector<int> word_bits(std::uint64_t word) {
  std::vector<int> out;
  for (; word; word &= word - 1) out.push_back(std::countr_zero(word));
  return out;
}

FormExpr::FormExpr(const RatFunc& c) {
  if (!c.is_zero()) terms_.emplace(Key{}, c);
}

FormExpr FormExpr::generator(int bit) {
  if (bit < 0 || bit >= gen::kCount) throw std::out_of_range("generator bit out of range");
  FormExpr f;
  f.terms_.emplace(Key{std::uint64_t{1} << bit, 0}, RatFunc(1));
  return f;
}

FormExpr FormExpr::monomial(const RatFunc& c, const std::vector<int>& bits, int pow) {
  FormExpr f(c);
  for (int b : bits) f = f * generator(b);
  return f.times_2pii(pow);
}

void FormExpr::add(const Key& k, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int FormExpr::degree() const {
  int d = -2;
  for (const auto& [k, c] : terms_) {
    int e = std::popcount(k.word);
    if (d == -2) d = e;
    else if (d != e) return -1;
  }
  return d == -2 ? 0 : d;
}

int FormExpr::form_degree() const {
  int d = -2;
  for (const auto& [k, c] : terms_) {
    int e = std::popcount(k.word & 0xffffffffULL);
    if (d == -2) d = e;
    else if (d != e) return -1;
  }
  return d == -2 ? 0 : d;
}

bool FormExpr::involves_generator(int bit) const {
  for (const auto& [k, c] : terms_) {
    if (k.word >> bit & 1) return true;
  }
  return false;
}

FormExpr& FormExpr::operator+=(const FormExpr& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

FormExpr& FormExpr::operator-=(const FormExpr& o) {
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

FormExpr FormExpr::operator-() const {
  FormExpr r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

FormExpr operator*(const FormExpr& a, const FormExpr& b) {
  FormExpr r;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      int s = wedge_sign(ka.word, kb.word);
      if (s == 0) continue;
      RatFunc c = ca * cb;
      if (s < 0) c = -c;
      r.add(FormExpr::Key{ka.word | kb.word, ka.pow + kb.pow}, c);
    }
  }
  return r;
}

FormExpr FormExpr::scaled(const RatFunc& c) const {
  FormExpr r;
  if (c.is_zero()) return r;
  for (const auto& [k, v] : terms_) r.add(k, v * c);
  return r;
}

FormExpr FormExpr::times_2pii(int k) const {
  FormExpr r;
  for (const auto& [key, c] : terms_) r.terms_.emplace(Key{key.word, key.pow + k}, c);
  return r;
}

FormExpr FormExpr::contract(int bit, const RatFunc& value, int pow_shift) const {
  FormExpr r;
  std::uint64_t mask = std::uint64_t{1} << bit;
  for (const auto& [k, c] : terms_) {
    if (!(k.word & mask)) continue;
    int pos = std::popcount(k.word & (mask - 1));
    RatFunc v = c * value;
    if (pos & 1) v = -v;
    r.add(Key{k.word & ~mask, k.pow + pow_shift}, v);
  }
  return r;
}

FormExpr FormExpr::delta_eta() const {
  FormExpr r;
  for (int j = 0; j < kMaxAxis; ++j) {
    if (involves_generator(gen::d(VarKind::Zeta, j))) {
      Poly diff = Poly::var(VarKind::Zeta, j) - Poly::var(VarKind::Z, j);
      r += contract(gen::d(VarKind::Zeta, j), RatFunc(diff), 1);
    }
    if (involves_generator(gen::d(VarKind::Tau, j))) {
      Poly diff = Poly::var(VarKind::Tau, j) - Poly::var(VarKind::W, j);
      r += contract(gen::d(VarKind::Tau, j), RatFunc(diff), 1);
    }
  }
  return r;
}

FormExpr FormExpr::dbar(const std::vector<VarKind>& kinds) const {
  FormExpr r;
  for (VarKind kind : kinds) {
    if (!is_conjugate(kind)) throw std::invalid_argument("dbar: kind is not a conjugate variable");
    for (int j = 0; j < kMaxAxis; ++j) {
      Var v{kind, j};
      int bit = gen::d(v);
      std::uint64_t mask = std::uint64_t{1} << bit;
      for (const auto& [k, c] : terms_) {
        if (k.word & mask) continue;
        if (!c.involves(kind)) continue;
        RatFunc dc = c.derivative(v);
        if (dc.is_zero()) continue;
        int pos = std::popcount(k.word & (mask - 1));
        if (pos & 1) dc = -dc;
        r.add(Key{k.word | mask, k.pow}, dc);
      }
    }
  }
  return r;
}

FormExpr FormExpr::map_coefficients(const std::function<RatFunc(const RatFunc&)>& fn) const {
  FormExpr r;
  for (const auto& [k, c] : terms_) r.add(k, fn(c));
  return r;
}

FormExpr FormExpr::substitute(Var v, const Poly& value) const {
  return map_coefficients([&](const RatFunc& c) { return c.substitute(v, value); });
}

FormExpr FormExpr::rename(VarKind from, VarKind to) const {
  FormExpr r;
  for (const auto& [k, c] : terms_) {
    std::uint64_t word = k.word;
    int sign = 1;
    for (int j = 0; j < kMaxAxis; ++j) {
      std::uint64_t src = std::uint64_t{1} << gen::d(from, j);
      if (!(word & src)) continue;
      std::uint64_t dst = std::uint64_t{1} << gen::d(to, j);
      if (word & dst) throw std::invalid_argument("rename: target differential already present");
      // Move the generator from its old position to its new one.
      int before = std::popcount(word & (src - 1));
      word &= ~src;
      int after = std::popcount(word & (dst - 1));
      if ((before + after) & 1) sign = -sign;
      word |= dst;
    }
    RatFunc cc = c.rename(from, to);
    r.add(Key{word, k.pow}, sign < 0 ? -cc : cc);
  }
  return r;
}

FormExpr FormExpr::to_output() const {
  FormExpr r = *this;
  for (VarKind k : {VarKind::Zeta, VarKind::ZetaBar, VarKind::Tau, VarKind::TauBar}) {
    r = r.rename(k, output_partner(k));
  }
  return r;
}

FormExpr FormExpr::kill_kind(VarKind kind) const {
  FormExpr r;
  std::uint64_t mask = 0;
  for (int j = 0; j < kMaxAxis; ++j) mask |= std::uint64_t{1} << gen::d(kind, j);
  for (const auto& [k, c] : terms_) {
    if (k.word & mask) continue;
    r.add(k, c.zero_kind(kind));
  }
  return r;
}

FormExpr FormExpr::filter_containing(std::uint64_t mask) const {
  FormExpr r;
  for (const auto& [k, c] : terms_) {
    if ((k.word & mask) == mask) r.terms_.emplace(k, c);
  }
  return r;
}

FormExpr FormExpr::coefficient_of(std::uint64_t word) const {
  FormExpr r;
  for (const auto& [k, c] : terms_) {
    if (k.word == word) r.add(Key{0, k.pow}, c);
  }
  return r;
}

std::map<std::uint64_t, std::complex<double>> FormExpr::evaluate(
    const std::function<std::complex<double>(Var)>& value) const {
  const std::complex<double> two_pi_i(0.0, 2.0 * std::numbers::pi);
  std::map<std::uint64_t, std::complex<double>> out;
  for (const auto& [k, c] : terms_) {
    out[k.word] += c.evaluate(value) * std::pow(two_pi_i, k.pow);
  }
  return out;
}

std::string FormExpr::to_string(const NameTable& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string(names) << ")";
    if (k.pow != 0) os << "*(2*pi*i)^" << k.pow;
    for (int b : word_bits(k.word)) os << "*" << gen::name(b, names);
  }
  return os.str();
}

nlohmann::json FormExpr::to_json(const NameTable& names) const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [k, c] : terms_) {
    nlohmann::json wedge = nlohmann::json::array();
    for (int b : word_bits(k.word)) wedge.push_back(gen::name(b, names));
    arr.push_back({{"coeff", c.to_string(names)}, {"wedge", wedge}, {"pow2pii", k.pow}});
  }
  return arr;
}

FormExpr FormExpr::from_json(const nlohmann::json& j, const NameTable& names) {
  if (!j.is_array()) throw ParseError("form must be a JSON array of terms", 0);
  FormExpr r;
  std::size_t idx = 0;
  for (const auto& t : j) {
    if (!t.contains("coeff")) throw ParseError("form term without 'coeff'", idx);
    RatFunc c = parse_rational(t.at("coeff").get<std::string>(), names);
    std::vector<int> bits;
    if (t.contains("wedge")) {
      for (const auto& g : t.at("wedge")) {
        int b = gen::lookup(g.get<std::string>(), names);
        if (b < 0) throw ParseError("unknown generator '" + g.get<std::string>() + "' in term", idx);
        bits.push_back(b);
      }
    }
    int pow = t.value("pow2pii", 0);
    r += monomial(c, bits, pow);
    ++idx;
  }
  return r;
}

}  // namespace jetdbar
