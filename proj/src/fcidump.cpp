#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "spinvqe/integrals.hpp"

namespace spinvqe {

FcidumpParseError::FcidumpParseError(std::size_t line, const std::string& what)
    : std::runtime_error("FCIDUMP line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

constexpr double kDuplicateTolerance = 1e-12;

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

/// Accepts Fortran 'D' exponents. Returns false unless the whole token is a number.
bool parse_real(std::string token, double& out) {
  for (char& c : token)
    if (c == 'd' || c == 'D') c = 'E';
  const char* begin = token.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end != begin && *end == '\0' && std::isfinite(out);
}

bool parse_int(const std::string& token, long& out) {
  const char* begin = token.c_str();
  char* end = nullptr;
  out = std::strtol(begin, &end, 10);
  return end != begin && *end == '\0';
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

struct Header {
  long norb = -1;
  long nelec = -1;
  long ms2 = 0;
  long isym = 1;
  std::vector<int> orbsym;
};

struct HeaderToken {
  std::string text;
  std::size_t line;
};

Header parse_header(const std::vector<HeaderToken>& tokens) {
  Header hdr;
  std::string key;
  std::size_t key_line = 0;
  std::vector<HeaderToken> values;

  auto flush = [&]() {
    if (key.empty()) return;
    auto single = [&](long& dst) {
      if (values.size() != 1 || !parse_int(values.front().text, dst))
        throw FcidumpParseError(key_line, "expected one integer for " + key);
    };
    if (key == "NORB") {
      single(hdr.norb);
    } else if (key == "NELEC") {
      single(hdr.nelec);
    } else if (key == "MS2") {
      single(hdr.ms2);
    } else if (key == "ISYM") {
      single(hdr.isym);
    } else if (key == "ORBSYM") {
      for (const auto& v : values) {
        long s = 0;
        if (!parse_int(v.text, s)) throw FcidumpParseError(v.line, "bad ORBSYM entry '" + v.text + "'");
        hdr.orbsym.push_back(static_cast<int>(s));
      }
    } else if (key == "UHF") {
      long uhf = 0;
      if (values.size() == 1 && (upper(values.front().text) == ".TRUE." || (parse_int(values.front().text, uhf) && uhf != 0)))
        throw FcidumpParseError(key_line, "unrestricted FCIDUMP files are not supported");
    }
    // other namelist keys (IUHF, ST, ...) are accepted and ignored
    key.clear();
    values.clear();
  };

  for (const auto& tok : tokens) {
    std::string t = tok.text;
    const auto eq = t.find('=');
    if (eq != std::string::npos) {
      flush();
      key = upper(t.substr(0, eq));
      key_line = tok.line;
      const std::string rest = t.substr(eq + 1);
      if (!rest.empty()) values.push_back({rest, tok.line});
    } else {
      if (key.empty()) throw FcidumpParseError(tok.line, "unexpected header token '" + t + "'");
      values.push_back(tok);
    }
  }
  flush();
  return hdr;
}

std::size_t canonical_eri_key(std::size_t n, std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
  std::size_t best = static_cast<std::size_t>(-1);
  for_each_eri_image(p, q, r, s, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    best = std::min(best, ((i * n + j) * n + k) * n + l);
  });
  return best;
}

struct Seen {
  double value;
  std::size_t line;
};

void record(std::map<std::size_t, Seen>& seen, std::size_t key, double value, std::size_t line) {
  auto [it, inserted] = seen.try_emplace(key, Seen{value, line});
  if (!inserted && std::abs(it->second.value - value) > kDuplicateTolerance) {
    std::ostringstream msg;
    msg << std::setprecision(17) << "duplicate entry " << value << " conflicts with " << it->second.value
        << " from line " << it->second.line;
    throw FcidumpParseError(line, msg.str());
  }
}

}  // namespace

ActiveSpaceIntegrals parse_fcidump(std::istream& in) {
  std::vector<HeaderToken> header_tokens;
  std::string line;
  std::size_t line_no = 0;
  bool started = false;
  bool header_done = false;

  while (!header_done && std::getline(in, line)) {
    ++line_no;
    std::string text = line;
    for (char& c : text)
      if (c == ',') c = ' ';
    for (const auto& raw : split_ws(text)) {
      const std::string tok = upper(raw);
      if (!started) {
        if (tok.rfind("&FCI", 0) != 0) throw FcidumpParseError(line_no, "expected '&FCI' header");
        started = true;
        const std::string rest = raw.substr(4);
        if (!rest.empty()) header_tokens.push_back({rest, line_no});
        continue;
      }
      if (header_done) throw FcidumpParseError(line_no, "trailing text after header terminator");
      if (tok == "&END" || tok == "/" || tok == "$END" || tok == "&") {
        header_done = true;
        continue;
      }
      header_tokens.push_back({raw, line_no});
    }
  }
  if (!started) throw FcidumpParseError(line_no, "missing '&FCI' header");
  if (!header_done) throw FcidumpParseError(line_no, "unterminated header (expected '&END' or '/')");

  const Header hdr = parse_header(header_tokens);
  if (hdr.norb <= 0) throw FcidumpParseError(line_no, "header lacks a positive NORB");
  if (hdr.nelec < 0) throw FcidumpParseError(line_no, "header lacks NELEC");
  if ((hdr.nelec + hdr.ms2) % 2 != 0 || std::abs(hdr.ms2) > hdr.nelec)
    throw FcidumpParseError(line_no, "NELEC and MS2 are inconsistent");
  if (hdr.ms2 < 0) throw FcidumpParseError(line_no, "negative MS2 is not supported (n_alpha >= n_beta)");
  if (!hdr.orbsym.empty() && hdr.orbsym.size() != static_cast<std::size_t>(hdr.norb))
    throw FcidumpParseError(line_no, "ORBSYM length differs from NORB");

  const auto n = static_cast<std::size_t>(hdr.norb);
  ActiveSpaceIntegrals ints = ActiveSpaceIntegrals::zeros(
      n, static_cast<int>((hdr.nelec + hdr.ms2) / 2), static_cast<int>((hdr.nelec - hdr.ms2) / 2));
  ints.orbsym = hdr.orbsym;
  ints.isym = static_cast<int>(hdr.isym);

  std::map<std::size_t, Seen> seen_two, seen_one, seen_core;

  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() != 5) throw FcidumpParseError(line_no, "expected 'value i j k l'");
    double value = 0.0;
    if (!parse_real(toks[0], value)) throw FcidumpParseError(line_no, "bad value '" + toks[0] + "'");
    long idx[4];
    for (int a = 0; a < 4; ++a) {
      if (!parse_int(toks[a + 1], idx[a])) throw FcidumpParseError(line_no, "bad index '" + toks[a + 1] + "'");
      if (idx[a] < 0 || idx[a] > hdr.norb)
        throw FcidumpParseError(line_no, "index " + toks[a + 1] + " outside [1, NORB]");
    }
    const bool nz[4] = {idx[0] != 0, idx[1] != 0, idx[2] != 0, idx[3] != 0};
    if (nz[0] && nz[1] && nz[2] && nz[3]) {
      const auto p = static_cast<std::size_t>(idx[0] - 1), q = static_cast<std::size_t>(idx[1] - 1),
                 r = static_cast<std::size_t>(idx[2] - 1), s = static_cast<std::size_t>(idx[3] - 1);
      record(seen_two, canonical_eri_key(n, p, q, r, s), value, line_no);
      for_each_eri_image(p, q, r, s, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        ints.g(i, j, k, l) = value;
      });
    } else if (nz[0] && nz[1] && !nz[2] && !nz[3]) {
      const auto p = static_cast<std::size_t>(idx[0] - 1), q = static_cast<std::size_t>(idx[1] - 1);
      record(seen_one, std::max(p, q) * n + std::min(p, q), value, line_no);
      ints.h(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = value;
      ints.h(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(p)) = value;
    } else if (!nz[0] && !nz[1] && !nz[2] && !nz[3]) {
      record(seen_core, 0, value, line_no);
      ints.core_energy = value;
    } else if (nz[0] && !nz[1] && !nz[2] && !nz[3]) {
      // orbital energy line, not part of the Hamiltonian
    } else {
      throw FcidumpParseError(line_no, "index pattern is neither two-electron, one-electron nor core");
    }
  }

  try {
    validate(ints);
  } catch (const IntegralError& e) {
    throw FcidumpParseError(line_no, e.what());
  }
  return ints;
}

ActiveSpaceIntegrals parse_fcidump(std::string_view text) {
  std::istringstream is{std::string(text)};
  return parse_fcidump(is);
}

ActiveSpaceIntegrals read_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open FCIDUMP file '" + path + "'");
  return parse_fcidump(in);
}

void write_fcidump(std::ostream& out, const ActiveSpaceIntegrals& ints, double threshold) {
  const std::size_t n = ints.n_orb;
  out << "&FCI NORB=" << n << ",NELEC=" << ints.n_electrons() << ",MS2=" << (ints.n_alpha - ints.n_beta)
      << ",\n";
  if (!ints.orbsym.empty()) {
    out << " ORBSYM=";
    for (int s : ints.orbsym) out << s << ",";
    out << "\n";
  }
  out << " ISYM=" << ints.isym << ",\n&END\n";
  out << std::scientific << std::setprecision(17);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s <= r; ++s) {
          if (p * n + q < r * n + s) continue;
          const double v = ints.g(p, q, r, s);
          if (std::abs(v) > threshold)
            out << std::setw(26) << v << " " << p + 1 << " " << q + 1 << " " << r + 1 << " " << s + 1 << "\n";
        }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q) {
      const double v = ints.h(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
      if (std::abs(v) > threshold) out << std::setw(26) << v << " " << p + 1 << " " << q + 1 << " 0 0\n";
    }
  out << std::setw(26) << ints.core_energy << " 0 0 0 0\n";
}

}  // namespace spinvqe
