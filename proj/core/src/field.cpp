#include "latsym/field.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "latsym/error.hpp"

namespace latsym {
namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) throw DomainError(std::string(what) + " holds a non-finite value");
    }
}

std::string point_str(IndexPoint pt) {
    return "(" + std::to_string(pt.m) + ", " + std::to_string(pt.n) + ")";
}

}  // namespace

Field2D::Field2D(IndexRange m_range, IndexRange n_range, std::vector<double> values)
    : m_range_(m_range), n_range_(n_range), values_(std::move(values)) {
    if (m_range.size() < 1 || n_range.size() < 1) throw DomainError("field window is empty");
    if (static_cast<std::int64_t>(values_.size()) != m_range.size() * n_range.size()) {
        throw DomainError("field value count does not match its window");
    }
    require_finite(values_, "field");
}

Field2D Field2D::constant(IndexRange m_range, IndexRange n_range, double value) {
    return generate(m_range, n_range, [value](IndexPoint) { return value; });
}

double Field2D::at(IndexPoint pt) const {
    if (!contains(pt)) throw WindowError("field access " + point_str(pt) + " outside window");
    return values_[static_cast<std::size_t>((pt.n - n_range_.lo) * m_range_.size() +
                                            (pt.m - m_range_.lo))];
}

Field2D Field2D::with_value(IndexPoint pt, double value) const {
    if (!contains(pt)) throw WindowError("field write " + point_str(pt) + " outside window");
    std::vector<double> copy = values_;
    copy[static_cast<std::size_t>((pt.n - n_range_.lo) * m_range_.size() + (pt.m - m_range_.lo))] =
        value;
    return Field2D(m_range_, n_range_, std::move(copy));
}

Profile1D::Profile1D(IndexRange range, std::vector<double> values, std::optional<FrontMeta> meta)
    : range_(range), values_(std::move(values)), meta_(meta) {
    if (range.size() < 1) throw DomainError("profile window is empty");
    if (static_cast<std::int64_t>(values_.size()) != range.size()) {
        throw DomainError("profile value count does not match its window");
    }
    require_finite(values_, "profile");
}

double Profile1D::at(std::int64_t i) const {
    if (!contains(i)) {
        throw WindowError("profile access " + std::to_string(i) + " outside [" +
                          std::to_string(range_.lo) + ", " + std::to_string(range_.hi) + "]");
    }
    return values_[static_cast<std::size_t>(i - range_.lo)];
}

Profile1D Profile1D::with_meta(FrontMeta meta) const { return Profile1D(range_, values_, meta); }

Profile1D row_of(const Field2D& field, std::int64_t n) {
    if (!field.n_range().contains(n)) {
        throw WindowError("row " + std::to_string(n) + " outside field window");
    }
    const IndexRange mr = field.m_range();
    const auto row = field.values().subspan(static_cast<std::size_t>((n - field.n_range().lo) * mr.size()),
                                            static_cast<std::size_t>(mr.size()));
    return Profile1D(mr, std::vector<double>(row.begin(), row.end()));
}

DiffOp::DiffOp(std::int64_t lower, std::int64_t upper, std::vector<double> coeffs, double delta)
    : lower_(lower), upper_(upper), coeffs_(std::move(coeffs)), delta_(delta) {
    if (upper <= lower) throw DomainError("difference operator needs upper > lower");
    if (!(std::isfinite(delta) && delta > 0.0)) {
        throw DomainError("difference operator step must be positive");
    }
    if (static_cast<std::int64_t>(coeffs_.size()) != upper - lower + 1) {
        throw DomainError("difference operator expects " + std::to_string(upper - lower + 1) +
                          " coefficients, got " + std::to_string(coeffs_.size()));
    }
    require_finite(coeffs_, "difference operator");

    double sum = 0.0;
    double first_moment = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        sum += coeffs_[i];
        first_moment += static_cast<double>(lower + static_cast<std::int64_t>(i)) * coeffs_[i];
    }
    if (std::abs(sum) > kDiffOpSumTolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "zero-sum rule violated: sum of coefficients = " << sum;
        throw DomainError(os.str());
    }
    if (std::abs(first_moment - 1.0) > kDiffOpSumTolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "unit first-moment rule violated: sum of l*a_l = " << first_moment;
        throw DomainError(os.str());
    }
}

DiffOp make_diffop(std::int64_t lower, std::int64_t upper, std::vector<double> coeffs, double delta) {
    return DiffOp(lower, upper, std::move(coeffs), delta);
}

double apply_diffop(const DiffOp& op, const Profile1D& f, std::int64_t at) {
    if (!f.contains(at + op.lower()) || !f.contains(at + op.upper())) {
        throw WindowError("difference stencil at " + std::to_string(at) + " leaves the profile window");
    }
    double acc = 0.0;
    const auto a = op.coeffs();
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * f.at(at + op.lower() + static_cast<std::int64_t>(i));
    }
    return acc / op.delta();
}

UpDown updown_derivatives(const Profile1D& f, std::int64_t at, double step) {
    const double here = f.at(at);
    return {(here - f.at(at - 1)) / step, (f.at(at + 1) - here) / step};
}

UpDown updown_derivatives(const Field2D& f, IndexPoint at, Axis axis, double step) {
    const IndexPoint prev = axis == Axis::m ? IndexPoint{at.m - 1, at.n} : IndexPoint{at.m, at.n - 1};
    const IndexPoint next = axis == Axis::m ? IndexPoint{at.m + 1, at.n} : IndexPoint{at.m, at.n + 1};
    const double here = f.at(at);
    return {(here - f.at(prev)) / step, (f.at(next) - here) / step};
}

}  // namespace latsym
