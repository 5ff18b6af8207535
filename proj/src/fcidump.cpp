#include "gsee/fcidump.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <tuple>

#include "gsee/error.hpp"

namespace gsee {

FciDump::FciDump(int norb, int nelec, int ms2)
    : norb_(norb), nelec_(nelec), ms2_(ms2), orbsym_(std::max(norb, 0), 1) {
  if (norb < 1) {
    throw Error(ErrorCode::InvalidHeader, "NORB must be >= 1");
  }
  if (nelec < 0 || nelec > 2 * norb) {
    throw Error(ErrorCode::InvalidHeader,
                "NELEC=" + std::to_string(nelec) + " outside [0, 2*NORB]");
  }
  if (std::abs(ms2) > nelec || (nelec + ms2) % 2 != 0) {
    throw Error(ErrorCode::InvalidHeader,
                "MS2=" + std::to_string(ms2) + " inconsistent with NELEC");
  }
  if (n_alpha() > norb || n_beta() > norb) {
    throw Error(ErrorCode::InvalidHeader, "spin populations exceed NORB");
  }
  h1_ = Eigen::MatrixXd::Zero(norb, norb);
  const std::size_t npair = pair_index(norb - 1, norb - 1) + 1;
  h2_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(npair * (npair + 1) / 2));
}

void FciDump::set_orbsym(std::vector<int> orbsym) {
  if (static_cast<int>(orbsym.size()) != norb_) {
    throw Error(ErrorCode::InvalidHeader, "ORBSYM length differs from NORB");
  }
  orbsym_ = std::move(orbsym);
}

void FciDump::check_index(int i) const {
  if (i < 0 || i >= norb_) {
    throw Error(ErrorCode::IndexOutOfRange,
                "orbital index " + std::to_string(i) + " not in [0, " +
                    std::to_string(norb_) + ")");
  }
}

std::size_t FciDump::pair_index(int i, int j) {
  if (i < j) std::swap(i, j);
  return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
}

std::size_t FciDump::canonical_index(int i, int j, int k, int l) const {
  check_index(i);
  check_index(j);
  check_index(k);
  check_index(l);
  std::size_t ij = pair_index(i, j);
  std::size_t kl = pair_index(k, l);
  if (ij < kl) std::swap(ij, kl);
  return ij * (ij + 1) / 2 + kl;
}

void FciDump::set_h1(int i, int j, double value) {
  check_index(i);
  check_index(j);
  h1_(i, j) = value;
  h1_(j, i) = value;
}

void FciDump::set_h2(int i, int j, int k, int l, double value) {
  h2_(static_cast<Eigen::Index>(canonical_index(i, j, k, l))) = value;
}

double FciDump::h1_at(int i, int j) const {
  check_index(i);
  check_index(j);
  return h1_(i, j);
}

double FciDump::h2_at(int i, int j, int k, int l) const {
  return h2_(static_cast<Eigen::Index>(canonical_index(i, j, k, l)));
}

bool operator==(const FciDump& a, const FciDump& b) {
  return a.norb_ == b.norb_ && a.nelec_ == b.nelec_ && a.ms2_ == b.ms2_ &&
         a.isym_ == b.isym_ && a.orbsym_ == b.orbsym_ &&
         a.e_core_ == b.e_core_ && a.h1_ == b.h1_ && a.h2_ == b.h2_;
}

double parse_real(std::string_view token) {
  std::string normalized(token);
  for (char& c : normalized) {
    if (c == 'D' || c == 'd') c = 'E';
  }
  const char* first = normalized.data();
  const char* last = first + normalized.size();
  if (first != last && *first == '+') ++first;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw Error(ErrorCode::MalformedLine,
                "cannot parse number '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::MalformedLine,
                "non-finite value '" + std::string(token) + "'");
  }
  return value;
}

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  std::string out(buf, ptr);
  if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
  return out;
}

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

int parse_int(std::string_view token, ErrorCode code) {
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  int value = 0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw Error(code, "cannot parse integer '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string> split_values(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// Namelist items, keyed by upper-cased name.
std::map<std::string, std::vector<std::string>> parse_header_items(
    std::string_view header) {
  static const std::regex key_re(R"(([A-Za-z_][A-Za-z0-9_]*)\s*=)");
  std::map<std::string, std::vector<std::string>> items;
  const std::string text(header);
  std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> keys;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), key_re);
       it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    keys.push_back({upper(m[1].str()),
                    {static_cast<std::size_t>(m.position(0)),
                     static_cast<std::size_t>(m.position(0) + m.length(0))}});
  }
  for (std::size_t n = 0; n < keys.size(); ++n) {
    const std::size_t begin = keys[n].second.second;
    const std::size_t end =
        n + 1 < keys.size() ? keys[n + 1].second.first : text.size();
    items[keys[n].first] = split_values(std::string_view(text).substr(begin, end - begin));
  }
  return items;
}

int header_int(const std::map<std::string, std::vector<std::string>>& items,
               const std::string& key, std::optional<int> fallback) {
  auto it = items.find(key);
  if (it == items.end() || it->second.empty()) {
    if (fallback) return *fallback;
    throw Error(ErrorCode::MissingHeaderField, key + " absent from &FCI header");
  }
  return parse_int(it->second.front(), ErrorCode::InvalidHeader);
}

}  // namespace

FciDump parse_fcidump(std::string_view text) {
  const std::string up = upper(text);
  const std::size_t start = up.find("&FCI");
  if (start == std::string::npos) {
    throw Error(ErrorCode::MissingHeaderField, "no &FCI namelist header");
  }
  const std::size_t header_begin = start + 4;
  std::size_t header_end = std::string::npos;
  std::size_t body_begin = std::string::npos;
  const std::size_t end_kw = up.find("&END", header_begin);
  const std::size_t slash = up.find('/', header_begin);
  if (end_kw != std::string::npos && (slash == std::string::npos || end_kw < slash)) {
    header_end = end_kw;
    body_begin = end_kw + 4;
  } else if (slash != std::string::npos) {
    header_end = slash;
    body_begin = slash + 1;
  } else {
    throw Error(ErrorCode::MissingHeaderField, "unterminated &FCI header");
  }

  const auto items =
      parse_header_items(text.substr(header_begin, header_end - header_begin));
  const int norb = header_int(items, "NORB", std::nullopt);
  const int nelec = header_int(items, "NELEC", std::nullopt);
  const int ms2 = header_int(items, "MS2", 0);
  if (auto uhf = items.find("UHF"); uhf != items.end() && !uhf->second.empty()) {
    const std::string flag = upper(uhf->second.front());
    if (flag.find('T') != std::string::npos) {
      throw Error(ErrorCode::InvalidHeader, "UHF integral files are not supported");
    }
  }

  FciDump dump(norb, nelec, ms2);
  dump.set_isym(header_int(items, "ISYM", 1));
  if (auto orbsym = items.find("ORBSYM"); orbsym != items.end()) {
    std::vector<int> labels;
    for (const auto& tok : orbsym->second) {
      labels.push_back(parse_int(tok, ErrorCode::InvalidHeader));
    }
    dump.set_orbsym(std::move(labels));
  }

  std::vector<bool> h2_seen(static_cast<std::size_t>(dump.h2_packed().size()), false);
  std::vector<bool> h1_seen(static_cast<std::size_t>(norb * norb), false);
  bool core_seen = false;

  auto check_duplicate = [](double old_value, double value, const std::string& where) {
    if (std::abs(old_value - value) > kDuplicateTolerance) {
      throw Error(ErrorCode::ConflictingDuplicate,
                  "conflicting values for " + where + ": " + format_real(old_value) +
                      " vs " + format_real(value));
    }
  };

  std::istringstream body{std::string(text.substr(body_begin))};
  std::string line;
  int line_no = 0;
  while (std::getline(body, line)) {
    ++line_no;
    const auto tokens = split_values(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 5) {
      throw Error(ErrorCode::MalformedLine,
                  "body line " + std::to_string(line_no) + " has " +
                      std::to_string(tokens.size()) + " tokens, expected 5");
    }
    const double value = parse_real(tokens[0]);
    int idx[4];
    for (int n = 0; n < 4; ++n) {
      idx[n] = parse_int(tokens[n + 1], ErrorCode::MalformedLine);
      if (idx[n] < 0 || idx[n] > norb) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "index " + std::to_string(idx[n]) + " on body line " +
                        std::to_string(line_no) + " exceeds NORB");
      }
    }
    const auto [i, j, k, l] = std::tuple{idx[0], idx[1], idx[2], idx[3]};
    const std::string where = "(" + tokens[1] + " " + tokens[2] + " " + tokens[3] +
                              " " + tokens[4] + ")";
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      if (core_seen) check_duplicate(dump.e_core(), value, where);
      dump.set_e_core(value);
      core_seen = true;
    } else if (k == 0 && l == 0) {
      if (j == 0) {
        // Orbital-energy records (`e i 0 0 0`) carry no Hamiltonian data.
        continue;
      }
      if (i == 0) {
        throw Error(ErrorCode::MalformedLine, "zero index in " + where);
      }
      const std::size_t slot = static_cast<std::size_t>(std::max(i, j) - 1) * norb +
                               static_cast<std::size_t>(std::min(i, j) - 1);
      if (h1_seen[slot]) check_duplicate(dump.h1_at(i - 1, j - 1), value, where);
      dump.set_h1(i - 1, j - 1, value);
      h1_seen[slot] = true;
    } else {
      if (i == 0 || j == 0 || k == 0 || l == 0) {
        throw Error(ErrorCode::MalformedLine, "zero index in " + where);
      }
      const std::size_t slot = dump.canonical_index(i - 1, j - 1, k - 1, l - 1);
      if (h2_seen[slot]) check_duplicate(dump.h2_at(i - 1, j - 1, k - 1, l - 1), value, where);
      dump.set_h2(i - 1, j - 1, k - 1, l - 1, value);
      h2_seen[slot] = true;
    }
  }
  return dump;
}

FciDump parse_fcidump(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_fcidump(std::string_view(buffer.str()));
}

FciDump read_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open FCIDUMP '" + path + "'");
  }
  return parse_fcidump(in);
}

std::string write_fcidump(const FciDump& dump) {
  std::ostringstream out;
  out << "&FCI NORB=" << dump.norb() << ",NELEC=" << dump.nelec()
      << ",MS2=" << dump.ms2() << ",\n ORBSYM=";
  for (int sym : dump.orbsym()) out << sym << ',';
  out << "\n ISYM=" << dump.isym() << ",\n&END\n";

  const int n = dump.norb();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const auto ij = FciDump::pair_index(i, j);
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l <= k; ++l) {
          if (FciDump::pair_index(k, l) > ij) continue;
          const double v = dump.h2_at(i, j, k, l);
          if (v == 0.0) continue;
          out << format_real(v) << ' ' << i + 1 << ' ' << j + 1 << ' ' << k + 1
              << ' ' << l + 1 << '\n';
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = dump.h1()(i, j);
      if (v == 0.0) continue;
      out << format_real(v) << ' ' << i + 1 << ' ' << j + 1 << " 0 0\n";
    }
  }
  out << format_real(dump.e_core()) << " 0 0 0 0\n";
  return out.str();
}

void write_fcidump(const FciDump& dump, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::Io, "cannot write FCIDUMP '" + path + "'");
  }
  out << write_fcidump(dump);
}

}  // namespace gsee
