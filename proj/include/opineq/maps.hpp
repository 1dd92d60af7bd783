#pragma once

// Unital positive linear maps and Ando's inequality Phi(A s B) <= Phi(A) s Phi(B).

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "opineq/check_result.hpp"
#include "opineq/format.hpp"
#include "opineq/means.hpp"
#include "opineq/sampling.hpp"

namespace opineq {

class PositiveLinearMap {
 public:
  struct Identity {};
  struct DiagonalPinching {};
  struct Compression {
    CMatrix v;  // n x k isometry
  };
  struct UnitaryMixture {
    std::vector<CMatrix> unitaries;
  };
  using Variant = std::variant<Identity, DiagonalPinching, Compression, UnitaryMixture>;

  static PositiveLinearMap identity() { return PositiveLinearMap(Identity{}); }
  static PositiveLinearMap pinching() { return PositiveLinearMap(DiagonalPinching{}); }

  static PositiveLinearMap compression(CMatrix v, double tol = 1e-12) {
    const Index k = v.cols();
    if (k < 1 || v.rows() < k) throw NotIsometry("compression needs an n x k matrix with 1 <= k <= n");
    const double err = (v.adjoint() * v - CMatrix::Identity(k, k)).norm();
    if (err > tol * static_cast<double>(k)) throw NotIsometry("V*V differs from I", err);
    return PositiveLinearMap(Compression{std::move(v)});
  }

  static PositiveLinearMap unitary_mixture(std::vector<CMatrix> us, double tol = 1e-12) {
    if (us.empty()) throw NotIsometry("unitary mixture needs at least one unitary");
    for (const CMatrix& u : us) {
      if (u.rows() != u.cols() || u.rows() != us.front().rows())
        throw DimensionMismatch("unitary mixture needs equal square unitaries");
      const double err = (u.adjoint() * u - CMatrix::Identity(u.rows(), u.rows())).norm();
      if (err > tol * static_cast<double>(u.rows())) throw NotIsometry("U*U differs from I", err);
    }
    return PositiveLinearMap(UnitaryMixture{std::move(us)});
  }

  const Variant& variant() const { return variant_; }

  Index output_dim(Index n) const {
    if (const auto* c = std::get_if<Compression>(&variant_)) return c->v.cols();
    return n;
  }

  /// "identity", "pinch", "compress:k", "umix:N".
  std::string to_string() const {
    return std::visit(
        [](const auto& m) -> std::string {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, Identity>) return "identity";
          else if constexpr (std::is_same_v<T, DiagonalPinching>) return "pinch";
          else if constexpr (std::is_same_v<T, Compression>) return "compress:" + std::to_string(m.v.cols());
          else return "umix:" + std::to_string(m.unitaries.size());
        },
        variant_);
  }

 private:
  explicit PositiveLinearMap(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

inline HermitianMatrix apply_map(const PositiveLinearMap& phi, const HermitianMatrix& a) {
  using M = PositiveLinearMap;
  return std::visit(
      [&a](const auto& m) -> HermitianMatrix {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, M::Identity>) {
          return a;
        } else if constexpr (std::is_same_v<T, M::DiagonalPinching>) {
          return HermitianMatrix::symmetrized(CMatrix(a.matrix().diagonal().asDiagonal()));
        } else if constexpr (std::is_same_v<T, M::Compression>) {
          if (m.v.rows() != a.dim())
            throw DimensionMismatch("compression V has " + std::to_string(m.v.rows()) + " rows, A has dim " +
                                    std::to_string(a.dim()));
          return a.congruence(m.v);
        } else {
          CMatrix acc = CMatrix::Zero(a.dim(), a.dim());
          for (const CMatrix& u : m.unitaries) {
            if (u.rows() != a.dim()) throw DimensionMismatch("unitary mixture dimension differs from A");
            acc += u.adjoint() * a.matrix() * u;
          }
          return HermitianMatrix::symmetrized(acc / static_cast<double>(m.unitaries.size()));
        }
      },
      phi.variant());
}

/// Builds a map from its CLI token for input dimension n. Compressions use
/// the first k columns of a Haar unitary, mixtures N Haar unitaries.
inline PositiveLinearMap make_map(std::string_view token, Index n, Rng& rng) {
  if (token == "identity") return PositiveLinearMap::identity();
  if (token == "pinch") return PositiveLinearMap::pinching();
  const auto colon = token.find(':');
  if (colon != std::string_view::npos) {
    const std::string_view kind = token.substr(0, colon);
    const long long count = parse_integer(token.substr(colon + 1));
    if (kind == "compress") {
      if (count < 1 || count > n)
        throw KExceedsDim("compress:k needs 1 <= k <= dim", static_cast<double>(count));
      return PositiveLinearMap::compression(haar_unitary(n, rng).leftCols(count), 1e-10);
    }
    if (kind == "umix") {
      if (count < 1) throw ConfigParse("umix:N needs N >= 1");
      std::vector<CMatrix> us;
      for (long long i = 0; i < count; ++i) us.push_back(haar_unitary(n, rng));
      return PositiveLinearMap::unitary_mixture(std::move(us), 1e-10);
    }
  }
  throw ConfigParse("unknown map '" + std::string(token) + "'");
}

/// Ando's inequality Phi(A s_v B) <= Phi(A) s_v Phi(B), v in [0,1].
inline CheckResult check_ando(const PositiveLinearMap& phi, const HermitianMatrix& a, const HermitianMatrix& b,
                              const MeanDescriptor& mean, const TolerancePolicy& tol = {}) {
  Params params{{"map", phi.to_string()},
                {"mean", mean.to_string()},
                {"dim", static_cast<std::int64_t>(a.dim())},
                {"outDim", static_cast<std::int64_t>(phi.output_dim(a.dim()))}};
  if (!mean.weight_in_unit_interval())
    return not_applicable("ando", std::move(params), mean.v, "Ando's inequality needs v in [0,1]");
  const HermitianMatrix lhs = apply_map(phi, evaluate_mean(a, b, mean, tol));
  const HermitianMatrix rhs = evaluate_mean(apply_map(phi, a), apply_map(phi, b), mean, tol);
  return loewner_check("ando", std::move(params), lhs, rhs, tol);
}

}  // namespace opineq
