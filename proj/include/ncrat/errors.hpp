#ifndef NCRAT_ERRORS_HPP
#define NCRAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ncrat {

/// Base of every library exception. The category decides the CLI exit code.
class Error : public std::runtime_error {
 public:
  enum class Category { Usage, Domain, Parse, Numerical };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const noexcept { return category_; }

 private:
  Category category_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(Category::Parse, what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An inverse whose argument is singular at the origin.
class NotAnalyticAtZero : public Error {
 public:
  explicit NotAnalyticAtZero(const std::string& what) : Error(Category::Parse, what) {}
};

class ShapeMismatch : public Error {
 public:
  explicit ShapeMismatch(const std::string& what) : Error(Category::Usage, what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(Category::Usage, what) {}
};

/// Precondition of a probe or audit is not met (e.g. the point is not
/// singular, or is not on the boundary).
class PreconditionViolation : public Error {
 public:
  explicit PreconditionViolation(const std::string& what) : Error(Category::Usage, what) {}
};

class OutsideFormalDomain : public Error {
 public:
  OutsideFormalDomain(int node_id, double sigma_min)
      : Error(Category::Domain, "inverse node " + std::to_string(node_id) +
                                    " is singular (smallest singular value " +
                                    std::to_string(sigma_min) + ")"),
        node_id_(node_id),
        sigma_min_(sigma_min) {}
  int node_id() const noexcept { return node_id_; }
  double sigma_min() const noexcept { return sigma_min_; }

 private:
  int node_id_;
  double sigma_min_;
};

class PencilSingular : public Error {
 public:
  explicit PencilSingular(double sigma_min)
      : Error(Category::Domain,
              "pencil is singular (smallest singular value " + std::to_string(sigma_min) + ")"),
        sigma_min_(sigma_min) {}
  double sigma_min() const noexcept { return sigma_min_; }

 private:
  double sigma_min_;
};

class ValueAtZeroSingular : public Error {
 public:
  ValueAtZeroSingular() : Error(Category::Domain, "value at zero is singular") {}
};

class NotSymmetricFunction : public Error {
 public:
  explicit NotSymmetricFunction(const std::string& what) : Error(Category::Domain, what) {}
};

class SymmetrizationFailed : public Error {
 public:
  explicit SymmetrizationFailed(const std::string& what) : Error(Category::Numerical, what) {}
};

class PivotSingular : public Error {
 public:
  PivotSingular() : Error(Category::Domain, "pivot block is singular") {}
};

class SchurSingular : public Error {
 public:
  SchurSingular() : Error(Category::Domain, "Schur complement is singular") {}
};

class NotInKernel : public Error {
 public:
  explicit NotInKernel(double residual)
      : Error(Category::Domain,
              "vector is not in the kernel of the Schur complement (residual " +
                  std::to_string(residual) + ")") {}
};

class DimensionOverflow : public Error {
 public:
  explicit DimensionOverflow(const std::string& what) : Error(Category::Usage, what) {}
};

class WordTooLong : public Error {
 public:
  WordTooLong() : Error(Category::Usage, "word is longer than the truncation level") {}
};

class WordLengthMismatch : public Error {
 public:
  WordLengthMismatch() : Error(Category::Usage, "separating word must have length nu") {}
};

class NotSingular : public Error {
 public:
  explicit NotSingular(double margin)
      : Error(Category::Usage,
              "pencil is invertible at the point (margin " + std::to_string(margin) + ")") {}
};

class DegenerateDeterminant : public Error {
 public:
  DegenerateDeterminant() : Error(Category::Numerical, "det F(t) vanishes identically") {}
};

class FitUnstable : public Error {
 public:
  explicit FitUnstable(const std::string& what) : Error(Category::Numerical, what) {}
};

class AllDirectionsBlocked : public Error {
 public:
  AllDirectionsBlocked() : Error(Category::Numerical, "every probe direction was blocked") {}
};

class YSingular : public Error {
 public:
  YSingular() : Error(Category::Domain, "Y = J - rho L_A(K) is singular") {}
};

class ScheduleBlocked : public Error {
 public:
  ScheduleBlocked() : Error(Category::Numerical, "no usable t in the schedule") {}
};

class NotMinimal : public Error {
 public:
  NotMinimal() : Error(Category::Usage, "realization is not minimal") {}
};

class ProbeDiverged : public Error {
 public:
  ProbeDiverged() : Error(Category::Numerical, "limit probe did not converge") {}
};

}  // namespace ncrat

#endif  // NCRAT_ERRORS_HPP
