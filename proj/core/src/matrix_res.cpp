#include <algorithm>

#include "deltachow/chow.hpp"
#include "deltachow/io.hpp"

namespace deltachow {

// Matrix representation for the differential resultant of
//   P0 = u00 + u01 y + u02 y^2            (order 0, degree 2)
//   P1 = u10 + u11 y + u12 y' + u13 y^2 + u14 y y' + u15 y'^2
// Row multipliers: {P0, y'P0, y^2 P0, y y' P0, y'^2 P0,
//                   P0', y P0', y' P0', y y' P0', y'^2 P0',
//                   P1, y P1, y' P1, y y' P1};
// columns: monomials y^l0 (y')^l1 with l0 <= 4, l1 < 4, l0 + l1 <= 4.
MatrixCertificate resultant_matrix_1var(const ChowForm& R, ResourceGuard& guard) {
  if (R.n != 1 || R.shapes.size() != 2 || !(R.shapes[0] == GenericShape{0, 2}) ||
      !(R.shapes[1] == GenericShape{1, 2}))
    throw MathError("bad_input",
                    "matrix representation is fixed to n=1, orders (0,1), degrees (2,2)");
  const RingPtr& U = R.uring();
  // combined ring with y on top of the u-variables
  std::vector<std::string> names;
  std::vector<VarKind> kinds;
  for (std::uint32_t i = 0; i < U->size(); ++i) {
    names.push_back(U->name(i));
    kinds.push_back(VarKind::Parameter);
  }
  RingPtr Rc = RingContext::make(U->field(), {"y"})->extended(names, kinds);
  std::uint32_t y = Rc->index_of("y").value();

  auto uvar = [&](int i, int j) {
    return DiffPoly::var(Rc, DerVar{Rc->index_of(chow_var_name(i, j)).value(), 0});
  };
  DiffPoly Y = DiffPoly::var(Rc, DerVar{y, 0});
  DiffPoly Yp = DiffPoly::var(Rc, DerVar{y, 1});
  DiffPoly P0 = uvar(0, 0) + uvar(0, 1) * Y + uvar(0, 2) * Y.pow(2);
  DiffPoly P1 = uvar(1, 0) + uvar(1, 1) * Y + uvar(1, 2) * Yp +
                uvar(1, 3) * Y.pow(2) + uvar(1, 4) * Y * Yp + uvar(1, 5) * Yp.pow(2);
  DiffPoly P0d = P0.differentiate();

  DiffPoly one = DiffPoly::integer(Rc, 1);
  struct Row {
    DiffPoly poly;
    std::string label;
  };
  std::vector<Row> rows;
  auto add_rows = [&](const DiffPoly& base, const std::string& bl,
                      const std::vector<std::pair<DiffPoly, std::string>>& mults) {
    for (const auto& [m, ml] : mults)
      rows.push_back({base * m, ml.empty() ? bl : ml + "*" + bl});
  };
  add_rows(P0, "P0",
           {{one, ""}, {Yp, "y'"}, {Y.pow(2), "y^2"}, {Y * Yp, "y*y'"}, {Yp.pow(2), "y'^2"}});
  add_rows(P0d, "P0'",
           {{one, ""}, {Y, "y"}, {Yp, "y'"}, {Y * Yp, "y*y'"}, {Yp.pow(2), "y'^2"}});
  add_rows(P1, "P1", {{one, ""}, {Y, "y"}, {Yp, "y'"}, {Y * Yp, "y*y'"}});

  // column monomials: y^l0 (y')^l1, l0 <= 4, l1 < 4, l0+l1 <= 4
  std::vector<std::pair<int, int>> cols;
  for (int deg = 0; deg <= 4; ++deg)
    for (int l0 = deg; l0 >= 0; --l0) {
      int l1 = deg - l0;
      if (l0 <= 4 && l1 < 4) cols.push_back({l0, l1});
    }
  if (cols.size() != rows.size())
    throw MathError("internal", "resultant matrix is not square");

  auto col_index = [&](std::uint32_t l0, std::uint32_t l1) -> std::size_t {
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (cols[c].first == static_cast<int>(l0) && cols[c].second == static_cast<int>(l1))
        return c;
    throw MathError("internal", "row product leaves the column span");
  };

  MatrixCertificate cert;
  cert.matrix.assign(rows.size(), std::vector<DiffPoly>(cols.size(), DiffPoly::zero(U)));
  VarKey ykey = key_of(DerVar{y, 0});
  VarKey ypkey = key_of(DerVar{y, 1});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    cert.row_labels.push_back(rows[r].label);
    for (const auto& t : rows[r].poly.terms()) {
      std::uint32_t l0 = t.mono.degree_of(ykey);
      std::uint32_t l1 = t.mono.degree_of(ypkey);
      Monomial rest = *t.mono.divided_by(
          Monomial::var(DerVar{y, 0}, l0) * Monomial::var(DerVar{y, 1}, l1));
      std::size_t c = col_index(l0, l1);
      DiffPoly entry = DiffPoly::from_terms(Rc, {{rest, t.coef}});
      cert.matrix[r][c] = cert.matrix[r][c] + entry.mapped_by_name(U);
    }
  }
  for (const auto& [l0, l1] : cols) {
    std::string lbl = "1";
    if (l0 > 0) lbl = "y" + std::string(l0 > 1 ? "^" + std::to_string(l0) : "");
    if (l1 > 0) {
      std::string part = "y'" + std::string(l1 > 1 ? "^" + std::to_string(l1) : "");
      lbl = l0 > 0 ? lbl + "*" + part : part;
    }
    cert.col_labels.push_back(lbl);
  }

  guard.check_deadline();
  cert.determinant = poly_determinant(cert.matrix);
  if (cert.determinant.is_zero())
    throw MathError("matrix_certificate_failed", "matrix determinant vanished");
  auto q = exact_divide(cert.determinant, R.poly);
  if (!q)
    throw MathError("matrix_certificate_failed",
                    "resultant does not divide the matrix determinant");
  cert.extraneous = std::move(*q);
  if (!(cert.determinant == R.poly * cert.extraneous))
    throw MathError("internal", "division certificate inconsistent");
  return cert;
}

}  // namespace deltachow
