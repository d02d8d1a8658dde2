#include "srr/galois.hpp"

#include "srr/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace srr {

namespace {

constexpr uint32_t kMaxFieldOrder = 1u << 16;
constexpr int kMaxMatrixDim = 64;

bool is_prime(uint32_t p) {
    if (p < 2) return false;
    for (uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Polynomials over GF(p) as coefficient vectors, low-to-high, no trailing
// zeros (except the zero polynomial, which is the empty vector).
using Poly = std::vector<uint32_t>;

Poly trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mod(Poly a, const Poly& mod, uint32_t p) {
    a = trim(std::move(a));
    int dm = int(mod.size()) - 1;
    uint32_t lead_inv = 1;
    {
        // mod is monic in all our uses, but handle a general leading coeff.
        uint32_t lead = mod.back();
        uint32_t e = p - 2, b = lead, r = 1;
        while (e) {
            if (e & 1) r = uint32_t(uint64_t(r) * b % p);
            b = uint32_t(uint64_t(b) * b % p);
            e >>= 1;
        }
        lead_inv = r;
    }
    while (int(a.size()) - 1 >= dm) {
        int shift = int(a.size()) - 1 - dm;
        uint32_t factor = uint32_t(uint64_t(a.back()) * lead_inv % p);
        for (int i = 0; i <= dm; ++i) {
            uint64_t sub = uint64_t(factor) * mod[i] % p;
            uint32_t& coeff = a[shift + i];
            coeff = uint32_t((coeff + p - sub) % p);
        }
        a = trim(std::move(a));
    }
    return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = uint32_t((prod[i + j] + uint64_t(a[i]) * b[j]) % p);
    }
    return poly_mod(std::move(prod), mod, p);
}

bool poly_divides(const Poly& divisor, const Poly& f, uint32_t p) {
    return poly_mod(f, divisor, p).empty();
}

bool is_irreducible(const Poly& f, uint32_t p) {
    int deg = int(f.size()) - 1;
    if (deg < 1) return false;
    // Trial division by every monic polynomial of degree 1..deg/2.
    for (int d = 1; 2 * d <= deg; ++d) {
        uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (uint64_t idx = 0; idx < count; ++idx) {
            Poly g(d + 1, 0);
            uint64_t rest = idx;
            for (int i = 0; i < d; ++i) {
                g[i] = uint32_t(rest % p);
                rest /= p;
            }
            g[d] = 1;
            if (poly_divides(g, f, p)) return false;
        }
    }
    return true;
}

// Default moduli for GF(2^m), m <= 8 (Conway polynomials).
const std::map<uint32_t, Poly>& binary_default_moduli() {
    static const std::map<uint32_t, Poly> table = {
        {1, {1, 1}},
        {2, {1, 1, 1}},
        {3, {1, 1, 0, 1}},
        {4, {1, 1, 0, 0, 1}},
        {5, {1, 0, 1, 0, 0, 1}},
        {6, {1, 1, 0, 1, 1, 0, 1}},
        {7, {1, 1, 0, 0, 0, 0, 0, 1}},
        {8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
    };
    return table;
}

std::vector<uint32_t> prime_factors(uint64_t n) {
    std::vector<uint32_t> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(uint32_t(d));
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(uint32_t(n));
    return out;
}

Poly index_to_poly(uint32_t idx, uint32_t p) {
    Poly out;
    while (idx) {
        out.push_back(idx % p);
        idx /= p;
    }
    return out;
}

uint32_t poly_to_index(const Poly& a, uint32_t p) {
    uint64_t idx = 0;
    for (size_t i = a.size(); i-- > 0;) idx = idx * p + a[i];
    return uint32_t(idx);
}

}  // namespace

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
    if (!is_prime(spec_.p)) throw ValidationError("field characteristic must be prime");
    if (spec_.m < 1) throw ValidationError("extension degree must be >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < spec_.m; ++i) {
        q *= spec_.p;
        if (q > kMaxFieldOrder) throw ValidationError("field order exceeds 2^16 cap");
    }
    q_ = uint32_t(q);
    if (spec_.m == 1) {
        spec_.modulus.clear();
        return;
    }
    if (spec_.modulus.empty()) {
        if (spec_.p == 2) {
            auto it = binary_default_moduli().find(spec_.m);
            if (it != binary_default_moduli().end()) spec_.modulus = it->second;
        }
        if (spec_.modulus.empty())
            throw ValidationError("no default modulus for GF(" + std::to_string(spec_.p) +
                                  "^" + std::to_string(spec_.m) + "); supply one");
    }
    if (spec_.modulus.size() != spec_.m + 1)
        throw ValidationError("modulus must have degree m (m+1 coefficients)");
    if (spec_.modulus.back() != 1) throw ValidationError("modulus must be monic");
    for (uint32_t c : spec_.modulus)
        if (c >= spec_.p) throw ValidationError("modulus coefficient out of range");
    if (!is_irreducible(spec_.modulus, spec_.p))
        throw ValidationError("modulus polynomial is reducible over GF(p)");
}

std::shared_ptr<const Field> Field::prime(uint32_t p) {
    return std::make_shared<Field>(FieldSpec{p, 1, {}});
}

std::shared_ptr<const Field> Field::binary_ext(uint32_t m) {
    return std::make_shared<Field>(FieldSpec{2, m, {}});
}

std::shared_ptr<const Field> Field::make(FieldSpec spec) {
    return std::make_shared<Field>(std::move(spec));
}

void Field::check_element(uint32_t a) const {
    if (a >= q_) throw ValidationError("element index out of range for field");
}

uint32_t Field::add(uint32_t a, uint32_t b) const {
    check_element(a);
    check_element(b);
    if (spec_.m == 1) return (a + b) % spec_.p;
    uint32_t out = 0, scale = 1;
    for (uint32_t i = 0; i < spec_.m; ++i) {
        uint32_t da = a % spec_.p, db = b % spec_.p;
        out += ((da + db) % spec_.p) * scale;
        a /= spec_.p;
        b /= spec_.p;
        scale *= spec_.p;
    }
    return out;
}

uint32_t Field::neg(uint32_t a) const {
    check_element(a);
    if (spec_.m == 1) return (spec_.p - a) % spec_.p;
    uint32_t out = 0, scale = 1;
    for (uint32_t i = 0; i < spec_.m; ++i) {
        uint32_t da = a % spec_.p;
        out += ((spec_.p - da) % spec_.p) * scale;
        a /= spec_.p;
        scale *= spec_.p;
    }
    return out;
}

uint32_t Field::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t Field::mul(uint32_t a, uint32_t b) const {
    check_element(a);
    check_element(b);
    if (spec_.m == 1) return uint32_t(uint64_t(a) * b % spec_.p);
    Poly prod = poly_mul_mod(index_to_poly(a, spec_.p), index_to_poly(b, spec_.p),
                             spec_.modulus, spec_.p);
    return poly_to_index(prod, spec_.p);
}

uint32_t Field::pow(uint32_t a, uint64_t e) const {
    check_element(a);
    uint32_t result = 1, base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

uint32_t Field::inv(uint32_t a) const {
    check_element(a);
    if (a == 0) throw ValidationError("inversion of zero field element");
    return pow(a, uint64_t(q_) - 2);
}

uint64_t Field::element_order(uint32_t a) const {
    check_element(a);
    if (a == 0) throw ValidationError("zero has no multiplicative order");
    uint64_t order = 1;
    uint32_t x = a;
    while (x != 1) {
        x = mul(x, a);
        ++order;
    }
    return order;
}

uint32_t Field::primitive_element() const {
    if (q_ == 2) return 1;
    const uint64_t group = uint64_t(q_) - 1;
    const auto factors = prime_factors(group);
    for (uint32_t a = 1; a < q_; ++a) {
        bool primitive = true;
        for (uint32_t f : factors) {
            if (pow(a, group / f) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return a;
    }
    throw Error("no primitive element found");  // unreachable for a valid field
}

FieldElement::FieldElement(std::shared_ptr<const Field> field, uint32_t index)
    : field_(std::move(field)), index_(index) {
    if (!field_) throw ValidationError("field element needs a field");
    if (index_ >= field_->q()) throw ValidationError("element index out of range");
}

const Field& FieldElement::same_field_as(const FieldElement& o) const {
    if (!(*field_ == *o.field_)) throw ValidationError("mixed-field operands");
    return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    return {field_, same_field_as(o).add(index_, o.index_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
    return {field_, same_field_as(o).sub(index_, o.index_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
    return {field_, same_field_as(o).mul(index_, o.index_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
    return {field_, same_field_as(o).mul(index_, field_->inv(o.index_))};
}
FieldElement FieldElement::inverse() const { return {field_, field_->inv(index_)}; }
FieldElement FieldElement::pow(uint64_t e) const { return {field_, field_->pow(index_, e)}; }

bool FieldElement::operator==(const FieldElement& o) const {
    return *field_ == *o.field_ && index_ == o.index_;
}

Matrix::Matrix(std::shared_ptr<const Field> field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(size_t(rows) * cols, 0) {
    if (!field_) throw ValidationError("matrix needs a field");
    if (rows < 0 || cols < 0 || rows > kMaxMatrixDim || cols > kMaxMatrixDim)
        throw ValidationError("matrix dimensions out of the supported 64x64 range");
}

Matrix::Matrix(std::shared_ptr<const Field> field, int rows, int cols,
               std::vector<uint32_t> row_major)
    : Matrix(std::move(field), rows, cols) {
    if (row_major.size() != size_t(rows) * cols)
        throw ValidationError("matrix data size does not match dimensions");
    for (uint32_t v : row_major)
        if (v >= field_->q()) throw ValidationError("matrix entry out of field range");
    data_ = std::move(row_major);
}

Matrix Matrix::identity(std::shared_ptr<const Field> field, int n) {
    Matrix m(std::move(field), n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::from_columns(std::shared_ptr<const Field> field,
                            const std::vector<std::vector<uint32_t>>& columns) {
    if (columns.empty()) throw ValidationError("matrix needs at least one column");
    int rows = int(columns[0].size());
    Matrix m(std::move(field), rows, int(columns.size()));
    for (size_t c = 0; c < columns.size(); ++c) {
        if (int(columns[c].size()) != rows) throw ValidationError("ragged column list");
        for (int r = 0; r < rows; ++r) m.set(r, int(c), columns[c][r]);
    }
    return m;
}

void Matrix::set(int r, int c, uint32_t v) {
    if (v >= field_->q()) throw ValidationError("matrix entry out of field range");
    data_[size_t(r) * cols_ + c] = v;
}

std::vector<uint32_t> Matrix::column(int c) const {
    std::vector<uint32_t> out(rows_);
    for (int r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
}

bool Matrix::operator==(const Matrix& o) const {
    return *field_ == *o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

namespace {

// Row-reduces an augmented matrix in place; returns pivot column per row.
std::vector<int> row_reduce(const Field& f, std::vector<std::vector<uint32_t>>& m,
                            int active_cols) {
    std::vector<int> pivot_cols;
    int row = 0;
    int rows = int(m.size());
    for (int col = 0; col < active_cols && row < rows; ++col) {
        int pivot = -1;
        for (int r = row; r < rows; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[row], m[pivot]);
        uint32_t inv = f.inv(m[row][col]);
        for (size_t c = 0; c < m[row].size(); ++c) m[row][c] = f.mul(m[row][c], inv);
        for (int r = 0; r < rows; ++r) {
            if (r == row || m[r][col] == 0) continue;
            uint32_t factor = m[r][col];
            for (size_t c = 0; c < m[r].size(); ++c)
                m[r][c] = f.sub(m[r][c], f.mul(factor, m[row][c]));
        }
        pivot_cols.push_back(col);
        ++row;
    }
    return pivot_cols;
}

std::vector<std::vector<uint32_t>> rows_from_columns(
    const std::vector<std::vector<uint32_t>>& cols,
    const std::vector<uint32_t>* augment) {
    size_t rows = cols.empty() ? (augment ? augment->size() : 0) : cols[0].size();
    std::vector<std::vector<uint32_t>> m(rows);
    for (size_t r = 0; r < rows; ++r) {
        m[r].reserve(cols.size() + (augment ? 1 : 0));
        for (const auto& c : cols) {
            if (c.size() != rows) throw ValidationError("column dimension mismatch");
            m[r].push_back(c[r]);
        }
        if (augment) m[r].push_back((*augment)[r]);
    }
    return m;
}

}  // namespace

int rank(const Matrix& mat) {
    std::vector<std::vector<uint32_t>> m(mat.rows());
    for (int r = 0; r < mat.rows(); ++r) {
        m[r].resize(mat.cols());
        for (int c = 0; c < mat.cols(); ++c) m[r][c] = mat.at(r, c);
    }
    return int(row_reduce(mat.field(), m, mat.cols()).size());
}

int rank_of_columns(const Field& f, const std::vector<std::vector<uint32_t>>& cols) {
    if (cols.empty()) return 0;
    auto m = rows_from_columns(cols, nullptr);
    return int(row_reduce(f, m, int(cols.size())).size());
}

bool in_span(const Field& f, const std::vector<std::vector<uint32_t>>& basis,
             const std::vector<uint32_t>& target) {
    return solve_in_columns(f, basis, target).has_value();
}

std::optional<std::vector<uint32_t>> solve_in_columns(
    const Field& f, const std::vector<std::vector<uint32_t>>& cols,
    const std::vector<uint32_t>& target) {
    for (const auto& c : cols)
        if (c.size() != target.size()) throw ValidationError("dimension mismatch in solve");
    auto m = rows_from_columns(cols, &target);
    auto pivots = row_reduce(f, m, int(cols.size()));
    // Inconsistent iff some reduced row is (0 ... 0 | nonzero).
    for (const auto& row : m) {
        bool all_zero = true;
        for (size_t c = 0; c + 1 < row.size(); ++c)
            if (row[c] != 0) {
                all_zero = false;
                break;
            }
        if (all_zero && row.back() != 0) return std::nullopt;
    }
    std::vector<uint32_t> x(cols.size(), 0);
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m[i].back();
    return x;
}

std::optional<std::vector<uint32_t>> solve(const Matrix& mat, const std::vector<uint32_t>& rhs) {
    if (int(rhs.size()) != mat.rows()) throw ValidationError("dimension mismatch in solve");
    std::vector<std::vector<uint32_t>> cols(mat.cols());
    for (int c = 0; c < mat.cols(); ++c) cols[c] = mat.column(c);
    return solve_in_columns(mat.field(), cols, rhs);
}

}  // namespace srr
