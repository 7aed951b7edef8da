#pragma once
// Error taxonomy shared by all modules. Every failure that a caller can act
// on derives from diaglat::error; exit_code() matches the CLI convention
// (1 = validation failure, 2 = size limit exceeded).

#include <stdexcept>
#include <string>

namespace diaglat {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 1; }
};

struct ground_mismatch : error {
  using error::error;
};

struct size_limit_exceeded : error {
  using error::error;
  int exit_code() const override { return 2; }
};

struct parse_error : error {
  using error::error;
};

struct not_latin : error {
  using error::error;
};

struct not_group_isotopic : error {
  // quadrangle counterexample, stored as (i1,i2,i1',i2',j1,j2,j1',j2')
  int idx[8];
  not_group_isotopic(const std::string& msg, const int (&w)[8]) : error(msg) {
    for (int k = 0; k < 8; ++k) idx[k] = w[k];
  }
};

struct not_associative : error {
  using error::error;
};

struct wrong_sort : error {
  using error::error;
};

struct not_regular : error {
  using error::error;
};

struct hypothesis_failed : error {
  using error::error;
};

struct not_special : error {
  using error::error;
};

struct dimension_too_small : error {
  using error::error;
};

struct not_hamming : error {
  using error::error;
};

struct not_latin_square_graph : error {
  using error::error;
};

struct order_too_small : error {
  using error::error;
};

struct exceptional_case : error {
  using error::error;
};

struct not_diagonal_graph : error {
  using error::error;
};

struct not_transitive : error {
  using error::error;
};

struct degenerate_case : error {
  using error::error;
};

struct not_applicable : error {
  using error::error;
};

}  // namespace diaglat
