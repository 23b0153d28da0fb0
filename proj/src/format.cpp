#include "pcg/format.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace pcg {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  for (char c : line) {
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      if (!cur.empty()) {
        toks.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) toks.push_back(cur);
  return toks;
}

std::uint64_t parse_uint(const std::string& tok, std::size_t line, const char* what) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line, std::string("expected a nonnegative integer for ") + what + ", got '" +
                               tok + "'");
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
  if (errno || !end || *end != '\0')
    throw ParseError(line, std::string("integer out of range for ") + what);
  return v;
}

struct FactorList {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> factors; // (gen 1-based, exp)
};

FactorList parse_factors(const std::vector<std::string>& toks, std::size_t from, std::size_t line) {
  FactorList fl;
  for (std::size_t t = from; t < toks.size(); ++t) {
    const std::string& tok = toks[t];
    auto caret = tok.find('^');
    if (caret == std::string::npos)
      throw ParseError(line, "expected <gen>^<exp> factor, got '" + tok + "'");
    std::uint64_t gen = parse_uint(tok.substr(0, caret), line, "generator index");
    std::uint64_t exp = parse_uint(tok.substr(caret + 1), line, "exponent");
    fl.factors.emplace_back(static_cast<std::uint32_t>(gen), static_cast<std::uint32_t>(exp));
  }
  return fl;
}

} // namespace

PcPresentation read_presentation(std::istream& in) {
  std::size_t lineno = 0;
  std::string line;

  std::uint32_t p = 0;
  std::uint32_t n = 0;
  bool have_p = false, have_gens = false;
  std::vector<std::uint32_t> rel_exps;
  std::vector<bool> rel_seen;
  std::vector<ExpVec> pows;
  std::vector<ExpVec> comms;
  std::vector<bool> pow_seen;
  std::vector<bool> comm_seen;
  bool relorders_complete = false;

  auto require_relorders_done = [&](std::size_t ln) {
    if (relorders_complete) return;
    for (std::uint32_t i = 0; i < n; ++i)
      if (!rel_seen[i])
        throw ParseError(ln, "relation before relorder of generator " + std::to_string(i + 1));
    relorders_complete = true;
    pows.assign(n, ExpVec(n, 0));
    comms.assign(static_cast<std::size_t>(n) * (n - 1) / 2, ExpVec(n, 0));
    pow_seen.assign(n, false);
    comm_seen.assign(static_cast<std::size_t>(n) * (n - 1) / 2, false);
  };

  auto read_tail = [&](const std::vector<std::string>& toks, std::size_t from, std::size_t ln,
                       std::uint32_t low) {
    ExpVec tail(n, 0);
    for (auto [gen, exp] : parse_factors(toks, from, ln).factors) {
      if (gen < 1 || gen > n) throw ParseError(ln, "generator index out of range");
      if (gen <= low)
        throw ParseError(ln, "tail entry at generator " + std::to_string(gen) +
                                 " violates the support rule (must exceed " +
                                 std::to_string(low) + ")");
      std::uint32_t m = 1;
      for (std::uint32_t k = 0; k < rel_exps[gen - 1]; ++k) m *= p;
      if (exp >= m) throw ParseError(ln, "tail exponent not in normal form");
      if (tail[gen - 1]) throw ParseError(ln, "duplicate factor for generator " + std::to_string(gen));
      tail[gen - 1] = exp;
    }
    return tail;
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& d = toks[0];

    if (d == "p") {
      if (have_p) throw ParseError(lineno, "duplicate p directive");
      if (toks.size() != 2) throw ParseError(lineno, "usage: p <prime>");
      p = static_cast<std::uint32_t>(parse_uint(toks[1], lineno, "p"));
      have_p = true;
    } else if (d == "gens") {
      if (!have_p) throw ParseError(lineno, "gens before p");
      if (have_gens) throw ParseError(lineno, "duplicate gens directive");
      if (toks.size() != 2) throw ParseError(lineno, "usage: gens <n>");
      std::uint64_t nn = parse_uint(toks[1], lineno, "gens");
      if (nn < 1 || nn > 30) throw ParseError(lineno, "gens must lie in [1, 30]");
      n = static_cast<std::uint32_t>(nn);
      rel_exps.assign(n, 0);
      rel_seen.assign(n, false);
      have_gens = true;
    } else if (d == "relorder") {
      if (!have_gens) throw ParseError(lineno, "relorder before gens");
      if (relorders_complete) throw ParseError(lineno, "relorder after pow/comm relations");
      if (toks.size() != 3) throw ParseError(lineno, "usage: relorder <i> <e_i>");
      std::uint64_t i = parse_uint(toks[1], lineno, "generator index");
      std::uint64_t e = parse_uint(toks[2], lineno, "relative order exponent");
      if (i < 1 || i > n) throw ParseError(lineno, "generator index out of range");
      if (e < 1 || e > 30) throw ParseError(lineno, "relative order exponent must lie in [1, 30]");
      if (rel_seen[i - 1]) throw ParseError(lineno, "duplicate relorder for generator " + toks[1]);
      rel_seen[i - 1] = true;
      rel_exps[i - 1] = static_cast<std::uint32_t>(e);
    } else if (d == "pow") {
      if (!have_gens) throw ParseError(lineno, "pow before gens");
      if (toks.size() < 3 || toks[2] != ":")
        throw ParseError(lineno, "usage: pow <i> : <factors>");
      require_relorders_done(lineno);
      std::uint64_t i = parse_uint(toks[1], lineno, "generator index");
      if (i < 1 || i > n) throw ParseError(lineno, "generator index out of range");
      if (pow_seen[i - 1]) throw ParseError(lineno, "duplicate pow relation for generator " + toks[1]);
      pow_seen[i - 1] = true;
      pows[i - 1] = read_tail(toks, 3, lineno, static_cast<std::uint32_t>(i));
    } else if (d == "comm") {
      if (!have_gens) throw ParseError(lineno, "comm before gens");
      if (toks.size() < 4 || toks[3] != ":")
        throw ParseError(lineno, "usage: comm <j> <i> : <factors>");
      require_relorders_done(lineno);
      std::uint64_t j = parse_uint(toks[1], lineno, "generator index");
      std::uint64_t i = parse_uint(toks[2], lineno, "generator index");
      if (j < 1 || j > n || i < 1 || i > n)
        throw ParseError(lineno, "generator index out of range");
      if (j <= i) throw ParseError(lineno, "comm requires j > i");
      std::size_t pi = PcPresentation::pair_index(static_cast<std::uint32_t>(j - 1),
                                                  static_cast<std::uint32_t>(i - 1));
      if (comm_seen[pi]) throw ParseError(lineno, "duplicate comm relation for this pair");
      comm_seen[pi] = true;
      comms[pi] = read_tail(toks, 4, lineno, static_cast<std::uint32_t>(i));
    } else {
      throw ParseError(lineno, "unknown directive '" + d + "'");
    }
  }

  if (!have_p) throw ParseError(lineno, "missing p directive");
  if (!have_gens) throw ParseError(lineno, "missing gens directive");
  require_relorders_done(lineno);
  try {
    return PcPresentation(p, std::move(rel_exps), std::move(pows), std::move(comms));
  } catch (const InputError& e) {
    throw ParseError(lineno, std::string("structural validation failed: ") + e.what());
  }
}

PcPresentation read_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open presentation file: " + path);
  return read_presentation(in);
}

void write_presentation(std::ostream& out, const PcPresentation& pres) {
  const std::uint32_t n = pres.num_gens();
  out << "p " << pres.prime() << "\n";
  out << "gens " << n << "\n";
  for (std::uint32_t i = 0; i < n; ++i)
    out << "relorder " << i + 1 << " " << pres.rel_order_exp(i) << "\n";
  auto emit_tail = [&](const ExpVec& t) {
    for (std::uint32_t k = 0; k < n; ++k)
      if (t[k]) out << " " << k + 1 << "^" << t[k];
    out << "\n";
  };
  for (std::uint32_t i = 0; i < n; ++i)
    if (pres.has_power_tail(i)) {
      out << "pow " << i + 1 << " :";
      emit_tail(pres.power_tail(i));
    }
  for (std::uint32_t j = 1; j < n; ++j)
    for (std::uint32_t i = 0; i < j; ++i)
      if (pres.has_comm_tail(j, i)) {
        out << "comm " << j + 1 << " " << i + 1 << " :";
        emit_tail(pres.comm_tail(j, i));
      }
}

std::string presentation_to_string(const PcPresentation& pres) {
  std::ostringstream os;
  write_presentation(os, pres);
  return os.str();
}

void write_presentation_file(const std::string& path, const PcPresentation& pres) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open output file: " + path);
  write_presentation(out, pres);
}

} // namespace pcg
