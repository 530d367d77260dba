#include "torsor/serialization.hpp"

namespace torsor {

json to_json_value(const MatX& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

json to_json_vector(const VecX& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

MatX matrix_from_json(const json& j, int rows, int cols, const std::string& key) {
  const auto bad = [&] {
    return Error("'" + key + "' must be a " + std::to_string(rows) + "x" + std::to_string(cols) +
                 " array of numbers");
  };
  if (!j.is_array() || static_cast<int>(j.size()) != rows) throw bad();
  MatX m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) throw bad();
    for (int k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) throw bad();
      m(i, k) = j[i][k].get<double>();
    }
  }
  return m;
}

VecX vector_from_json(const json& j, int size, const std::string& key) {
  if (!j.is_array() || static_cast<int>(j.size()) != size)
    throw Error("'" + key + "' must be an array of " + std::to_string(size) + " numbers");
  VecX v(size);
  for (int i = 0; i < size; ++i) {
    if (!j[i].is_number())
      throw Error("'" + key + "' must be an array of " + std::to_string(size) + " numbers");
    v(i) = j[i].get<double>();
  }
  return v;
}

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing key '") + key + "'");
  return j.at(key);
}

}  // namespace

void to_json(json& j, const AffineFrameChange& f) {
  j = json{{"C", to_json_vector(f.C())}, {"P", to_json_value(f.P())}};
}

void from_json(const json& j, AffineFrameChange& f) {
  f = AffineFrameChange(Vec4(vector_from_json(field(j, "C"), 4, "C")),
                        Mat4(matrix_from_json(field(j, "P"), 4, 4, "P")));
}

void to_json(json& j, const GalileanFrameChange& f) {
  j = json{{"u", to_json_vector(f.u())},
           {"R", to_json_value(f.R())},
           {"tau0", f.tau0()},
           {"k", to_json_vector(f.k())}};
}

void from_json(const json& j, GalileanFrameChange& f) {
  const json& tau = field(j, "tau0");
  if (!tau.is_number()) throw Error("'tau0' must be a number");
  f = GalileanFrameChange(Vec3(vector_from_json(field(j, "u"), 3, "u")),
                          Mat3(matrix_from_json(field(j, "R"), 3, 3, "R")), tau.get<double>(),
                          Vec3(vector_from_json(field(j, "k"), 3, "k")));
}

void to_json(json& j, const AffinePoint& a) { j = json{{"V", to_json_vector(a.V)}}; }

void from_json(const json& j, AffinePoint& a) { a.V = vector_from_json(field(j, "V"), 4, "V"); }

void to_json(json& j, const AffineForm& a) {
  j = json{{"chi", a.chi}, {"Phi", to_json_vector(a.Phi.transpose())}};
}

void from_json(const json& j, AffineForm& a) {
  const json& chi = field(j, "chi");
  if (!chi.is_number()) throw Error("'chi' must be a number");
  a.chi = chi.get<double>();
  a.Phi = vector_from_json(field(j, "Phi"), 4, "Phi").transpose();
}

void to_json(json& j, const Torsor& t) {
  j = json{{"T", to_json_vector(t.T())}, {"J", to_json_value(t.J())}};
}

void from_json(const json& j, Torsor& t) {
  t = Torsor(Vec4(vector_from_json(field(j, "T"), 4, "T")),
             Mat4(matrix_from_json(field(j, "J"), 4, 4, "J")));
}

void to_json(json& j, const PointwiseTorsor& t) {
  j = json{{"m", t.m},
           {"p", to_json_vector(t.p)},
           {"q", to_json_vector(t.q)},
           {"l", to_json_vector(t.l)}};
}

void from_json(const json& j, PointwiseTorsor& t) {
  const json& m = field(j, "m");
  if (!m.is_number()) throw Error("'m' must be a number");
  t.m = m.get<double>();
  t.p = vector_from_json(field(j, "p"), 3, "p");
  t.q = vector_from_json(field(j, "q"), 3, "q");
  t.l = vector_from_json(field(j, "l"), 3, "l");
}

void to_json(json& j, const BalanceResidual& r) {
  j = json{{"mass", r.mass},
           {"linear_momentum", to_json_vector(r.linear_momentum)},
           {"position_quantity", to_json_vector(r.position_quantity)},
           {"angular_momentum", to_json_vector(r.angular_momentum)}};
}

void to_json(json& j, const PointwiseState& s) {
  j = json{{"t", s.t},
           {"m", s.m},
           {"x", to_json_vector(s.x)},
           {"p", to_json_vector(s.p)},
           {"q", to_json_vector(s.q)},
           {"l", to_json_vector(s.l)},
           {"l0", to_json_vector(s.l0)}};
}

}  // namespace torsor
