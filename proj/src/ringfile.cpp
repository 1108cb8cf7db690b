#include "hk/ringfile.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace hk {

namespace {

struct Line {
  std::string_view text;
  std::size_t offset;  // of text within the file
};

std::string_view trim(std::string_view s, std::size_t& offset) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
    ++offset;
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits off the first whitespace-delimited word.
std::string_view word(Line& l) {
  std::size_t i = 0;
  while (i < l.text.size() && !std::isspace(static_cast<unsigned char>(l.text[i]))) ++i;
  const std::string_view w = l.text.substr(0, i);
  l.text.remove_prefix(i);
  l.offset += i;
  l.text = trim(l.text, l.offset);
  return w;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::uint64_t parse_uint(std::string_view s, std::size_t offset) {
  if (s.empty()) throw ParseError("expected an integer", offset);
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw ParseError("expected an integer", offset + i);
    if (v > (UINT64_MAX - 9) / 10) throw ParseError("integer too large", offset + i);
    v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
  }
  return v;
}

// Re-raises a ParseError from a sub-parser at a file offset.
[[noreturn]] void rethrow_at(const ParseError& e, std::size_t base) {
  std::string msg = e.what();
  const auto at = msg.rfind(" at offset ");
  if (at != std::string::npos) msg.resize(at);
  throw ParseError(msg, base + e.offset());
}

}  // namespace

const std::vector<Polynomial>& RingFile::ideal(const std::string& label) const {
  for (const auto& [name, gens] : ideals)
    if (name == label) return gens;
  throw PreconditionError("no ideal labelled '" + label + "'");
}

std::string RingFile::to_string() const {
  std::ostringstream os;
  const auto& spec = field->spec();
  os << "p " << spec.p << "\n";
  if (spec.m > 1) {
    os << "ext " << spec.m << " ";
    bool first = true;
    for (std::size_t k = spec.modulus.size(); k-- > 0;) {
      const auto c = spec.modulus[k];
      if (!c) continue;
      if (!first) os << "+";
      first = false;
      if (k == 0) {
        os << c;
      } else {
        if (c != 1) os << c << "*";
        os << spec.generator;
        if (k > 1) os << "^" << k;
      }
    }
    os << "\n";
  }
  os << "vars";
  for (const auto& v : ring->vars()) os << " " << v;
  os << "\n";
  for (const auto& [name, gens] : ideals) {
    os << "ideal " << name << " =";
    for (std::size_t i = 0; i < gens.size(); ++i) os << (i ? ", " : " ") << gens[i].to_string();
    os << "\n";
  }
  if (precision) os << "precision " << *precision << "\n";
  return os.str();
}

RingFile parse_ring_file(std::string_view text) {
  std::vector<Line> lines;
  for (std::size_t pos = 0; pos <= text.size();) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t off = pos;
    raw = trim(raw, off);
    if (!raw.empty()) lines.push_back({raw, off});
    pos = end + 1;
  }

  RingFile rf;
  std::optional<std::uint32_t> p;
  std::optional<std::pair<std::uint32_t, Line>> ext;
  std::vector<std::string> vars;
  // The field and ring are fixed by the first ideal line (or the end of file).
  auto build = [&](std::size_t where) {
    FieldSpec spec;
    spec.p = *p;
    if (ext) {
      // The modulus is read as a polynomial in the generator over F_p.
      const auto uring = Ring::create(FiniteField::prime(*p), {spec.generator});
      Polynomial mod;
      try {
        mod = parse_poly(ext->second.text, uring);
      } catch (const ParseError& e) {
        rethrow_at(e, ext->second.offset);
      }
      spec.m = ext->first;
      spec.modulus.assign(spec.m + 1, 0);
      for (const auto& t : mod.terms()) {
        if (t.m.e[0] > spec.m) throw ParseError("modulus degree exceeds m", ext->second.offset);
        spec.modulus[t.m.e[0]] = t.c;
      }
      if (spec.modulus[spec.m] != 1) throw ParseError("modulus must be monic of degree m", ext->second.offset);
    }
    try {
      rf.field = FiniteField::create(spec);
      rf.ring = Ring::create(rf.field, vars);
    } catch (const PreconditionError& e) {
      throw ParseError(e.what(), where);
    } catch (const ResourceError& e) {
      throw ParseError(e.what(), where);
    }
  };
  for (auto l : lines) {
    const std::size_t key_off = l.offset;
    const std::string_view key = word(l);
    if (key == "p") {
      if (p) throw ParseError("duplicate 'p' line", key_off);
      const auto v = parse_uint(l.text, l.offset);
      if (v < 2 || v > (1u << 20) || !is_prime(v)) throw ParseError("p must be a prime", l.offset);
      p = static_cast<std::uint32_t>(v);
    } else if (key == "ext") {
      if (!p) throw ParseError("'ext' before 'p'", key_off);
      if (ext) throw ParseError("duplicate 'ext' line", key_off);
      const std::size_t m_off = l.offset;
      const auto m = parse_uint(word(l), m_off);
      if (m < 2 || m > 20) throw ParseError("extension degree out of range", m_off);
      if (l.text.empty()) throw ParseError("missing modulus", l.offset);
      ext = std::make_pair(static_cast<std::uint32_t>(m), l);
    } else if (key == "vars") {
      if (!vars.empty()) throw ParseError("duplicate 'vars' line", key_off);
      while (!l.text.empty()) {
        const std::size_t off = l.offset;
        const auto v = word(l);
        if (!is_identifier(v)) throw ParseError("bad variable name", off);
        vars.emplace_back(v);
      }
      if (vars.empty()) throw ParseError("no variables", l.offset);
    } else if (key == "ideal") {
      if (!p || vars.empty()) throw ParseError("'ideal' before 'p' and 'vars'", key_off);
      if (!rf.ring) build(key_off);
      const std::size_t off = l.offset;
      const auto label = word(l);
      if (!is_identifier(label)) throw ParseError("bad ideal label", off);
      for (const auto& [name, g] : rf.ideals)
        if (name == label) throw ParseError("duplicate ideal label", off);
      if (l.text.empty() || l.text[0] != '=') throw ParseError("expected '='", l.offset);
      l.text.remove_prefix(1);
      ++l.offset;
      l.text = trim(l.text, l.offset);
      std::vector<Polynomial> gens;
      try {
        gens = parse_poly_list(l.text, rf.ring);
      } catch (const ParseError& e) {
        rethrow_at(e, l.offset);
      }
      rf.ideals.emplace_back(std::string(label), std::move(gens));
    } else if (key == "precision") {
      if (rf.precision) throw ParseError("duplicate 'precision' line", key_off);
      const auto N = parse_uint(l.text, l.offset);
      if (N < 3 || N > 1000) throw ParseError("precision must be in [3, 1000]", l.offset);
      rf.precision = static_cast<std::uint32_t>(N);
    } else {
      throw ParseError("unknown directive '" + std::string(key) + "'", key_off);
    }
  }
  if (!p) throw ParseError("missing 'p' line", text.size());
  if (vars.empty()) throw ParseError("missing 'vars' line", text.size());
  if (!rf.ring) build(0);
  return rf;
}

RingFile load_ring_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open ring file " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_ring_file(ss.str());
}

}  // namespace hk
