#include <doctest.h>

#include <sysnet/naming.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace sysnet;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const std::string& tag) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() /
                 ("sysnet_nam_" + tag + "_" + std::to_string(::getpid()) + "_" +
                  std::to_string(counter++));
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& content) {
  fs::path p = dir / name;
  std::ofstream out(p);
  out << content;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

EntityIndex grocery_index() {
  EntityIndex index;
  index.get_or_add("butter");
  index.get_or_add("jam");
  index.get_or_add("milk");
  return index;
}

}  // namespace

TEST_CASE("decode replaces ids with names, annotations untouched") {
  auto dir = make_temp_dir("dec");
  auto in = write_file(dir, "rules_id.txt", "1 2 -> 3 #STAB: 0.67\n");
  decode_rules(in, grocery_index(), dir / "rules_name.txt");
  CHECK(slurp(dir / "rules_name.txt") == "butter jam -> milk #STAB: 0.67\n");
  fs::remove_all(dir);
}

TEST_CASE("decode: empty file, unknown id, bad token") {
  auto dir = make_temp_dir("decerr");
  EntityIndex index = grocery_index();

  auto empty = write_file(dir, "empty.txt", "");
  decode_rules(empty, index, dir / "empty_out.txt");
  CHECK(slurp(dir / "empty_out.txt").empty());

  auto unknown = write_file(dir, "unknown.txt", "1 -> 99 #SUP: 1\n");
  try {
    decode_rules(unknown, index, dir / "x.txt");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    std::string msg = e.what();
    CHECK(msg.find("99") != std::string::npos);
    CHECK(msg.find(":1") != std::string::npos);
  }

  auto junk = write_file(dir, "junk.txt", "1 -> abc\n");
  CHECK_THROWS_AS(decode_rules(junk, index, dir / "y.txt"), ParseError);
  fs::remove_all(dir);
}

TEST_CASE("decode then encode reproduces the input byte for byte") {
  auto dir = make_temp_dir("round");
  std::mt19937 rng(83);

  EntityIndex index;
  for (int i = 0; i < 30; ++i) index.get_or_add("entity_" + std::to_string(i));

  for (int trial = 0; trial < 20; ++trial) {
    std::ostringstream content;
    std::size_t lines = rng() % 10;
    for (std::size_t l = 0; l < lines; ++l) {
      std::size_t nx = 1 + rng() % 3, ny = 1 + rng() % 3;
      for (std::size_t i = 0; i < nx; ++i) content << (1 + rng() % 30) << ' ';
      content << "->";
      for (std::size_t i = 0; i < ny; ++i) content << ' ' << (1 + rng() % 30);
      switch (rng() % 3) {
        case 0: content << " #SUP: " << rng() % 9 << " #CONF: 0.5"; break;
        case 1: content << " #STABCOUNT: 3 #STAB: 0.60"; break;
        default: break;  // no annotation
      }
      content << '\n';
    }
    auto id_file = write_file(dir, "in.txt", content.str());
    decode_rules(id_file, index, dir / "names.txt");
    encode_rules(dir / "names.txt", index, dir / "back.txt");
    CHECK(slurp(dir / "back.txt") == slurp(id_file));
  }
  fs::remove_all(dir);
}

TEST_CASE("encode reports unknown names") {
  auto dir = make_temp_dir("enc");
  auto file = write_file(dir, "names.txt", "butter -> nosuch\n");
  CHECK_THROWS_AS(encode_rules(file, grocery_index(), dir / "out.txt"), ParseError);
  fs::remove_all(dir);
}

TEST_CASE("summarize: counts, SNP line, determinism") {
  auto dir = make_temp_dir("sum");
  // the worked three-state scenario: 11 NERs, 5 of them stable at 2-0.5-2
  std::ostringstream ners;
  for (int i = 0; i < 11; ++i) ners << "w" << i << " -> z #STABCOUNT: 1 #STAB: 0.33\n";
  std::ostringstream sners;
  for (int i = 0; i < 5; ++i) sners << "w" << i << " -> z #STABCOUNT: 2 #STAB: 0.67\n";
  auto ners_file = write_file(dir, "NERs_Name.txt", ners.str());
  auto sners_file = write_file(dir, "SNERs_Name.txt", sners.str());

  SummaryInputs in;
  in.report = SnpReport{Thresholds{2, Ratio::from_decimal("0.5"), 2}, 3, 5, 11};
  in.ners_name_file = ners_file;
  in.sners_name_file = sners_file;
  in.state_labels = {"v1", "v2", "v3"};

  std::string text = summarize(in);
  CHECK(text.find("SNP: 30.30") != std::string::npos);
  CHECK(text.find("NER count: 11") != std::string::npos);
  CHECK(text.find("SNER count: 5") != std::string::npos);
  CHECK(text.find("2-0.5-2") != std::string::npos);
  CHECK(text.find("assessment:") == std::string::npos);  // no previous metric
  CHECK(summarize(in) == text);                          // deterministic

  SUBCASE("zero SNERs") {
    write_file(dir, "SNERs_Name.txt", "");
    SummaryInputs zero = in;
    zero.report = SnpReport{Thresholds{2, Ratio::from_decimal("0.5"), 3}, 3, 0, 11};
    std::string z = summarize(zero);
    CHECK(z.find("SNP: 0.00") != std::string::npos);
  }

  SUBCASE("count mismatch is a pipeline corruption error") {
    SummaryInputs bad = in;
    bad.report.sner_count = 4;
    CHECK_THROWS_AS(summarize(bad), ValidationError);
  }

  SUBCASE("assessment appears when a previous metric is supplied") {
    SummaryInputs with_prev = in;
    with_prev.previous_snp = 20.0;
    std::string text2 = summarize(with_prev);
    CHECK(text2.find("previous SNP: 20.00") != std::string::npos);
    CHECK(text2.find("assessment: changes are significantly done") != std::string::npos);

    with_prev.previous_snp = 30.30;
    CHECK(summarize(with_prev).find("assessment: the new state is like the old states") !=
          std::string::npos);

    with_prev.previous_snp = 90.0;
    CHECK(summarize(with_prev).find("assessment: the new state has not changed much") !=
          std::string::npos);
  }
  fs::remove_all(dir);
}
