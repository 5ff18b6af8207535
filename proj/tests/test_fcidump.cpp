#include <gtest/gtest.h>

#include <array>
#include <sstream>

#include "gsee/error.hpp"
#include "gsee/fcidump.hpp"
#include "test_support.hpp"

using namespace gsee;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_fcidump(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ErrorCode::Io;
}

std::array<std::array<int, 4>, 8> orbit(int i, int j, int k, int l) {
  return {{{i, j, k, l}, {j, i, k, l}, {i, j, l, k}, {j, i, l, k},
           {k, l, i, j}, {l, k, i, j}, {k, l, j, i}, {l, k, j, i}}};
}

}  // namespace

TEST(FcidumpParse, MinimalHeaderAndOneBodyLine) {
  const FciDump d = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0,&END\n1.0 1 1 0 0\n");
  EXPECT_EQ(d.norb(), 2);
  EXPECT_EQ(d.nelec(), 2);
  EXPECT_EQ(d.ms2(), 0);
  EXPECT_EQ(d.h1_at(0, 0), 1.0);
  EXPECT_EQ(d.h1_at(0, 1), 0.0);
  EXPECT_EQ(d.h1_at(1, 1), 0.0);
  EXPECT_EQ(d.e_core(), 0.0);
  EXPECT_TRUE((d.h2_packed().array() == 0.0).all());
}

TEST(FcidumpParse, CoreEnergyLine) {
  const FciDump d = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0,&END\n-0.5 0 0 0 0\n");
  EXPECT_EQ(d.e_core(), -0.5);
}

TEST(FcidumpParse, SlashTerminatorFortranExponentsAndLooseSeparators) {
  const FciDump d = parse_fcidump(
      " &FCI NORB= 2 ,\n  NELEC=2, MS2=0,\n  ORBSYM=1,1,\n  ISYM=1\n /\n"
      "  2.5D-01   1 1 1 1\n 1.0d0 2 2 0 0\n");
  EXPECT_DOUBLE_EQ(d.h2_at(0, 0, 0, 0), 0.25);
  EXPECT_EQ(d.h1_at(1, 1), 1.0);
  EXPECT_EQ(d.orbsym(), (std::vector<int>{1, 1}));
}

TEST(FcidumpParse, SixUniqueEntriesFillEveryPermutation) {
  const std::string text =
      "&FCI NORB=2,NELEC=2,MS2=0,&END\n"
      "0.11 1 1 1 1\n0.12 1 1 2 1\n0.13 2 1 2 1\n0.14 1 1 2 2\n0.15 2 1 2 2\n0.16 2 2 2 2\n";
  const FciDump d = parse_fcidump(text);
  // Expected table built by expanding each listed entry over its 8 index permutations.
  double expect[2][2][2][2] = {};
  const std::vector<std::pair<std::array<int, 4>, double>> listed = {
      {{0, 0, 0, 0}, 0.11}, {{0, 0, 1, 0}, 0.12}, {{1, 0, 1, 0}, 0.13},
      {{0, 0, 1, 1}, 0.14}, {{1, 0, 1, 1}, 0.15}, {{1, 1, 1, 1}, 0.16}};
  for (const auto& [idx, v] : listed) {
    for (const auto& p : orbit(idx[0], idx[1], idx[2], idx[3])) expect[p[0]][p[1]][p[2]][p[3]] = v;
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          EXPECT_NE(expect[i][j][k][l], 0.0);
          EXPECT_EQ(d.h2_at(i, j, k, l), expect[i][j][k][l]) << i << j << k << l;
        }
}

TEST(FcidumpParse, Errors) {
  EXPECT_EQ(code_of("&FCI NELEC=2,&END\n"), ErrorCode::MissingHeaderField);
  EXPECT_EQ(code_of("&FCI NORB=2,&END\n"), ErrorCode::MissingHeaderField);
  EXPECT_EQ(code_of("&FCI NORB=2,NELEC=2,&END\n1.0 3 1 0 0\n"), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of("&FCI NORB=2,NELEC=2,&END\n1.0 1 1 0\n"), ErrorCode::MalformedLine);
  EXPECT_EQ(code_of("&FCI NORB=2,NELEC=2,&END\nabc 1 1 0 0\n"), ErrorCode::MalformedLine);
  EXPECT_EQ(code_of("&FCI NORB=2,NELEC=2,&END\n0.1 1 2 1 1\n0.2 2 1 1 1\n"),
            ErrorCode::ConflictingDuplicate);
  EXPECT_EQ(code_of("&FCI NORB=2,NELEC=5,&END\n"), ErrorCode::InvalidHeader);
  EXPECT_EQ(code_of("&FCI NORB=2,NELEC=2,MS2=1,&END\n"), ErrorCode::InvalidHeader);
  EXPECT_EQ(code_of("&FCI NORB=2,NELEC=2,UHF=.TRUE.,&END\n"), ErrorCode::InvalidHeader);
}

TEST(FcidumpParse, AgreeingDuplicatesAccepted) {
  const FciDump d = parse_fcidump("&FCI NORB=2,NELEC=2,&END\n0.1 1 2 1 1\n0.1 2 1 1 1\n");
  EXPECT_EQ(d.h2_at(1, 0, 0, 0), 0.1);
}

TEST(FcidumpParse, LocaleIndependentNumbers) {
  EXPECT_EQ(parse_real("1.5E-3"), 1.5e-3);
  EXPECT_EQ(parse_real("1.5D-3"), 1.5e-3);
  EXPECT_EQ(parse_real("-2.0d+1"), -20.0);
  EXPECT_THROW(parse_real("1,5"), Error);
}

TEST(FcidumpLookup, KlIjSymmetryAndUnsetDefault) {
  FciDump d(2, 2);
  d.set_h2(0, 0, 1, 1, 0.3);
  EXPECT_EQ(d.h2_at(1, 1, 0, 0), 0.3);
  EXPECT_EQ(d.h2_at(0, 1, 0, 1), 0.0);
  EXPECT_THROW(d.h2_at(0, 0, 2, 0), Error);
}

TEST(FcidumpLookup, EveryPermutationOfEveryOrbitAgrees) {
  for (int norb = 1; norb <= 4; ++norb) {
    const FciDump d = reference::random_dump(norb, 2, 100 + norb);
    for (int i = 0; i < norb; ++i)
      for (int j = 0; j < norb; ++j)
        for (int k = 0; k < norb; ++k)
          for (int l = 0; l < norb; ++l) {
            const double v = d.h2_at(i, j, k, l);
            for (const auto& p : orbit(i, j, k, l)) ASSERT_EQ(d.h2_at(p[0], p[1], p[2], p[3]), v);
          }
  }
}

TEST(FcidumpWrite, RoundTripMinimal) {
  const FciDump d = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0,&END\n1.0 1 1 0 0\n");
  EXPECT_EQ(parse_fcidump(write_fcidump(d)), d);
}

TEST(FcidumpWrite, ZeroCoreEnergyStillWritten) {
  const FciDump d(1, 1, 1);
  const std::string text = write_fcidump(d);
  EXPECT_NE(text.find("0.0 0 0 0 0"), std::string::npos) << text;
}

TEST(FcidumpWrite, RoundTripRandom) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int norb = 1 + static_cast<int>(seed % 5);
    FciDump d = reference::random_dump(norb, norb, seed);
    d.set_h2(0, 0, 0, 0, 1e-300);  // tiny magnitudes survive too
    d.set_e_core(-1234.5678901234567);
    const FciDump back = parse_fcidump(write_fcidump(d));
    EXPECT_EQ(back, d) << "seed " << seed;
    EXPECT_EQ(write_fcidump(back), write_fcidump(d));
  }
}

TEST(FcidumpWrite, OnlyCanonicalNonzeroEntries) {
  FciDump d(2, 2);
  d.set_h2(1, 0, 0, 0, 0.5);
  const std::string text = write_fcidump(d);
  std::istringstream in(text);
  std::string line;
  int h2_lines = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    double v;
    int i, j, k, l;
    if (ls >> v >> i >> j >> k >> l && k != 0) ++h2_lines;
  }
  EXPECT_EQ(h2_lines, 1);
}

TEST(FcidumpIo, FileRoundTrip) {
  const FciDump d = reference::random_dump(3, 2, 9);
  const std::string path = ::testing::TempDir() + "/rt.fcidump";
  write_fcidump(d, path);
  EXPECT_EQ(read_fcidump(path), d);
  EXPECT_THROW(read_fcidump(path + ".missing"), Error);
}
