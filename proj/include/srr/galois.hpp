#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace srr {

// GF(p^m). For m > 1 the modulus is a monic irreducible polynomial over
// GF(p), coefficients low-to-high, length m+1. Prime fields leave it empty.
struct FieldSpec {
    uint32_t p = 2;
    uint32_t m = 1;
    std::vector<uint32_t> modulus;

    bool operator==(const FieldSpec&) const = default;
};

// Elements are canonical indices in [0, q): the base-p digits of the index
// are the polynomial coefficients, so 0 and 1 are the additive and
// multiplicative identities. All operations are pure; a Field is immutable.
class Field {
  public:
    explicit Field(FieldSpec spec);

    static std::shared_ptr<const Field> prime(uint32_t p);
    // Default modulus table (p = 2, m <= 8); other extensions need an
    // explicit modulus polynomial.
    static std::shared_ptr<const Field> binary_ext(uint32_t m);
    static std::shared_ptr<const Field> make(FieldSpec spec);

    uint32_t p() const { return spec_.p; }
    uint32_t m() const { return spec_.m; }
    uint32_t q() const { return q_; }
    const FieldSpec& spec() const { return spec_; }

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;  // throws on a == 0
    uint32_t pow(uint32_t a, uint64_t e) const;

    // Smallest canonical index whose multiplicative order is q-1.
    uint32_t primitive_element() const;
    uint64_t element_order(uint32_t a) const;

    bool operator==(const Field& other) const { return spec_ == other.spec_; }

  private:
    void check_element(uint32_t a) const;

    FieldSpec spec_;
    uint32_t q_ = 0;
};

// Value-semantic element carrying its field, so mixed-field arithmetic can
// be rejected instead of silently reinterpreted.
class FieldElement {
  public:
    FieldElement(std::shared_ptr<const Field> field, uint32_t index);

    uint32_t index() const { return index_; }
    const std::shared_ptr<const Field>& field() const { return field_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement inverse() const;
    FieldElement pow(uint64_t e) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

  private:
    const Field& same_field_as(const FieldElement& o) const;

    std::shared_ptr<const Field> field_;
    uint32_t index_;
};

class Matrix {
  public:
    Matrix(std::shared_ptr<const Field> field, int rows, int cols);
    Matrix(std::shared_ptr<const Field> field, int rows, int cols,
           std::vector<uint32_t> row_major);

    static Matrix identity(std::shared_ptr<const Field> field, int n);
    static Matrix from_columns(std::shared_ptr<const Field> field,
                               const std::vector<std::vector<uint32_t>>& columns);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return *field_; }
    const std::shared_ptr<const Field>& field_ptr() const { return field_; }

    uint32_t at(int r, int c) const { return data_[size_t(r) * cols_ + c]; }
    void set(int r, int c, uint32_t v);

    std::vector<uint32_t> column(int c) const;

    bool operator==(const Matrix& o) const;

  private:
    std::shared_ptr<const Field> field_;
    int rows_, cols_;
    std::vector<uint32_t> data_;
};

int rank(const Matrix& m);
int rank_of_columns(const Field& f, const std::vector<std::vector<uint32_t>>& cols);

// True iff target lies in the column span of the basis list.
bool in_span(const Field& f, const std::vector<std::vector<uint32_t>>& basis,
             const std::vector<uint32_t>& target);

// Any solution x of m * x = rhs, if one exists.
std::optional<std::vector<uint32_t>> solve(const Matrix& m, const std::vector<uint32_t>& rhs);

// Coefficients expressing target over the given columns; nullopt when the
// target is outside the span. Unique when the columns are independent.
std::optional<std::vector<uint32_t>> solve_in_columns(
    const Field& f, const std::vector<std::vector<uint32_t>>& cols,
    const std::vector<uint32_t>& target);

}  // namespace srr
