#include <filesystem>
#include <random>

#include <doctest.h>

#include "dasg/error.hpp"
#include "dasg/estimator.hpp"
#include "dasg/io.hpp"
#include "dasg/operators.hpp"
#include "fixtures.hpp"
#include "random_data.hpp"

using namespace dasg;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("dasg_io_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("number formatting") {
    CHECK(io::format_number(0.1) == "0.1");
    CHECK(io::format_number(1.0 / 3) == "0.333333333333");
    CHECK(io::format_number(-2.5e-20) == "-2.5e-20");
    CHECK(io::round12(1.0 / 3) == 0.333333333333);
    const nlohmann::json j = io::rounded({{"a", 2.0 / 3}, {"b", {1.0 / 7, 3}}, {"c", "x"}});
    CHECK(j["a"].get<double>() == 0.666666666667);
    CHECK(j["b"][0].get<double>() == 0.142857142857);
    CHECK(j["b"][1].get<int>() == 3);
    CHECK(j["c"] == "x");
  }

  TEST_CASE("dataset round trip") {
    TempDir dir;
    std::mt19937_64 gen(3);
    const Dataset base = fixtures::random_dataset(NodeScheme({1, 2, 1}), 25, gen);
    const Dataset data(base.scheme(), base.rows(), {"a", "b", "c"},
                       {{"no", "yes"}, {"lo", "mid", "hi"}, {"-1", "+1"}});
    io::write_dataset(dir.path / "sub" / "d.csv", data);
    io::write_labels(dir.path / "sub" / "l.txt", data);
    const Dataset back = io::read_dataset(dir.path / "sub" / "d.csv", dir.path / "sub" / "l.txt");
    CHECK(back.rows() == data.rows());
    CHECK(back.names() == data.names());
    CHECK(back.labels() == data.labels());
    CHECK(back.scheme() == data.scheme());

    const Dataset inferred = io::read_dataset(dir.path / "sub" / "d.csv");
    CHECK(inferred.scheme() == data.scheme());
  }

  TEST_CASE("label sidecar fixes unobserved levels") {
    TempDir dir;
    io::write_text(dir.path / "d.csv", "x,y\n0,1\n1,0\n1,1\n");
    io::write_text(dir.path / "l.txt", "y 0=a 1=b 2=c\nx 0=-1 1=+1\n");
    const Dataset d = io::read_dataset(dir.path / "d.csv", dir.path / "l.txt");
    CHECK(d.scheme() == NodeScheme({1, 2}));
    CHECK(d.labels()[1][2] == "c");
    CHECK_THROWS_AS(sample_davo(d), DegenerateNodeError);
  }

  TEST_CASE("malformed datasets") {
    TempDir dir;
    io::write_text(dir.path / "ragged.csv", "x,y\n0,1\n1\n");
    CHECK_THROWS_AS(io::read_dataset(dir.path / "ragged.csv"), DataError);
    io::write_text(dir.path / "text.csv", "x,y\n0,1\n1,a\n");
    CHECK_THROWS_AS(io::read_dataset(dir.path / "text.csv"), DataError);
    io::write_text(dir.path / "neg.csv", "x\n0\n-1\n");
    CHECK_THROWS_AS(io::read_dataset(dir.path / "neg.csv"), DataError);
    CHECK_THROWS_AS(io::read_dataset(dir.path / "missing.csv"), DataError);
  }

  TEST_CASE("edge lists") {
    TempDir dir;
    const Graph g(5, {{0, 1}, {2, 4}, {1, 3}});
    io::write_edges(dir.path / "e.tsv", g);
    CHECK(io::read_text(dir.path / "e.tsv") == "# p=5\n1\t2\n2\t4\n3\t5\n");
    CHECK(io::read_edges(dir.path / "e.tsv") == g);
    CHECK(io::read_edges(dir.path / "e.tsv", 5) == g);
    CHECK_THROWS_AS(io::read_edges(dir.path / "e.tsv", 7), DataError);
    CHECK_THROWS_AS(io::read_edges(dir.path / "e.tsv", 3), DataError);
    io::write_text(dir.path / "bare.tsv", "1 2\n");
    CHECK_THROWS_AS(io::read_edges(dir.path / "bare.tsv"), DataError);
    CHECK(io::read_edges(dir.path / "bare.tsv", 2).edge_count() == 1);
    io::write_text(dir.path / "loop.tsv", "# p=3\n2 2\n");
    CHECK_THROWS_AS(io::read_edges(dir.path / "loop.tsv"), DataError);
  }

  TEST_CASE("pmf files") {
    TempDir dir;
    io::write_text(dir.path / "ex1.txt",
                   "3 1 1 1\n"
                   "0 0 0 1/12\n1 0 0 1/12\n0 1 0 1/12\n1 1 0 3/12\n"
                   "0 0 1 1/12\n1 0 1 1/12\n0 1 1 1/12\n1 1 1 3/12\n");
    const JointPMF pmf = io::read_pmf(dir.path / "ex1.txt");
    CHECK(pmf.table() == fixtures::binary3_pmf().table());

    io::write_text(dir.path / "sparse.txt", "2, 1, 1\n0,0,0.5\n1,1,0.5\n");
    CHECK(io::read_pmf(dir.path / "sparse.txt").table() == std::vector<double>{0.5, 0.0, 0.0, 0.5});
    io::write_text(dir.path / "twice.txt", "1 1\n0 0.5\n0 0.5\n");
    CHECK_THROWS_AS(io::read_pmf(dir.path / "twice.txt"), DataError);
    io::write_text(dir.path / "mass.txt", "1 1\n0 0.5\n1 0.6\n");
    CHECK_THROWS_AS(io::read_pmf(dir.path / "mass.txt"), DataError);
    io::write_text(dir.path / "zero.txt", "1 1\n0 1/0\n");
    CHECK_THROWS_AS(io::read_pmf(dir.path / "zero.txt"), DataError);
  }

  TEST_CASE("matrices and Ising parameters") {
    TempDir dir;
    std::mt19937_64 gen(5);
    const Eigen::MatrixXd m = fixtures::random_symmetric(4, gen);
    io::write_matrix_csv(dir.path / "m.csv", m);
    const Eigen::MatrixXd back = io::read_matrix_csv(dir.path / "m.csv");
    CHECK((back - m).cwiseAbs().maxCoeff() <= 1e-11 * m.cwiseAbs().maxCoeff());
    const IsingParams ising = io::read_ising(dir.path / "m.csv");
    CHECK(ising.p() == 4);

    io::write_text(dir.path / "asym.csv", "0,1\n0.5,0\n");
    CHECK_THROWS_AS(io::read_ising(dir.path / "asym.csv"), DataError);
    io::write_text(dir.path / "rect.csv", "0,1,2\n1,0,2\n");
    CHECK_THROWS_AS(io::read_ising(dir.path / "rect.csv"), DataError);
  }
}
