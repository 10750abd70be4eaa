#include "blockheight/chartable.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "blockheight/errors.hpp"

namespace blockheight {

using nlohmann::json;

size_t CharacterTable::trivial_row() const {
  for (size_t i = 0; i < irreducibles.size(); ++i) {
    bool all_one = true;
    for (const Cyclotomic& v : irreducibles[i])
      if (!v.is_integer() || v.integer_value() != 1) {
        all_one = false;
        break;
      }
    if (all_one) return i;
  }
  fail("InvariantViolation", "table has no trivial character");
}

mpz_class CharacterTable::inner_product(size_t a, size_t b) const {
  Cyclotomic acc(exponent);
  for (size_t j = 0; j < num_classes(); ++j) {
    Cyclotomic prod = irreducibles[a][j] * irreducibles[b][j].conjugate();
    acc += prod.scaled(mpz_class(static_cast<unsigned long>(class_sizes[j])));
  }
  Cyclotomic quot;
  if (!acc.divide_exact(mpz_class(static_cast<unsigned long>(order)), quot) ||
      !quot.is_integer())
    fail("NonIntegralMultiplicity", "inner product is not an integer in " + group_name);
  return quot.integer_value();
}

void validate_table(const CharacterTable& t) {
  size_t c = t.num_classes();
  if (t.irreducibles.size() != c || t.degrees.size() != c)
    fail("InvariantViolation", "table is not square");
  uint64_t sum = 0;
  for (uint64_t s : t.class_sizes) sum += s;
  if (sum != t.order)
    fail("InvariantViolation", "class sizes do not sum to |G|");
  for (uint64_t s : t.class_sizes)
    if (t.order % s != 0)
      fail("InvariantViolation", "class size does not divide |G|");
  uint64_t lcm_orders = 1;
  for (uint64_t o : t.class_orders) lcm_orders = std::lcm(lcm_orders, o);
  if (lcm_orders != t.exponent)
    fail("InvariantViolation", "exponent differs from lcm of element orders");
  if (t.power_maps.size() != t.exponent)
    fail("InvariantViolation", "power map count differs from exponent");
  for (size_t j = 0; j < c; ++j) {
    if (t.class_orders[t.power_maps[0][j]] != 1 ||
        t.class_sizes[t.power_maps[0][j]] != 1)
      fail("InvariantViolation", "0th power map must hit the identity class");
    if (t.exponent > 1 && t.power_maps[1][j] != static_cast<int32_t>(j))
      fail("InvariantViolation", "1st power map must be the identity map");
  }
  mpz_class sq = 0;
  for (size_t i = 0; i < c; ++i) {
    if (t.degrees[i] == 0 || t.order % t.degrees[i] != 0)
      fail("InvariantViolation", "degree does not divide |G|");
    if (!t.irreducibles[i][0].is_integer() ||
        t.irreducibles[i][0].integer_value() != static_cast<long>(t.degrees[i]))
      fail("InvariantViolation", "identity column does not match degrees");
    sq += mpz_class(static_cast<unsigned long>(t.degrees[i])) *
          static_cast<unsigned long>(t.degrees[i]);
  }
  if (sq != static_cast<unsigned long>(t.order))
    fail("InvariantViolation", "sum of squared degrees differs from |G|");
  for (size_t a = 0; a < c; ++a)
    for (size_t b = a; b < c; ++b) {
      mpz_class ip;
      try {
        ip = t.inner_product(a, b);
      } catch (const Error&) {
        ip = -1; // non-integral inner product is an orthogonality failure
      }
      if (ip != (a == b ? 1 : 0))
        fail("InvariantViolation", "first orthogonality fails at rows " +
                                       std::to_string(a) + "," + std::to_string(b));
    }
  t.trivial_row();
}

std::string export_table_json(const CharacterTable& t) {
  json classes = json::array();
  for (size_t j = 0; j < t.num_classes(); ++j) {
    json pm = json::object();
    for (uint64_t k = 0; k < t.exponent; ++k)
      pm[std::to_string(k)] = t.power_maps[k][j];
    classes.push_back(
        {{"size", t.class_sizes[j]}, {"order", t.class_orders[j]}, {"powermaps", pm}});
  }
  json irr = json::array();
  for (const auto& row : t.irreducibles) {
    json jrow = json::array();
    for (const Cyclotomic& v : row) {
      json jval = json::array();
      for (const auto& [k, coef] : v.terms()) {
        if (!coef.fits_slong_p())
          fail("FormatError", "coefficient too large for serialization");
        jval.push_back(json::array({coef.get_si(), k}));
      }
      jrow.push_back(jval);
    }
    irr.push_back(jrow);
  }
  json out{{"name", t.group_name},
           {"order", t.order},
           {"exponent", t.exponent},
           {"classes", classes},
           {"irreducibles", irr}};
  return out.dump(1);
}

CharacterTable import_table_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& ex) {
    fail("FormatError", std::string("bad table JSON: ") + ex.what());
  }
  CharacterTable t;
  try {
    t.group_name = in.at("name").get<std::string>();
    t.order = in.at("order").get<uint64_t>();
    t.exponent = in.at("exponent").get<uint64_t>();
    const json& classes = in.at("classes");
    size_t c = classes.size();
    t.power_maps.assign(t.exponent, std::vector<int32_t>(c, -1));
    for (size_t j = 0; j < c; ++j) {
      t.class_sizes.push_back(classes[j].at("size").get<uint64_t>());
      t.class_orders.push_back(classes[j].at("order").get<uint64_t>());
      for (const auto& [key, val] : classes[j].at("powermaps").items()) {
        uint64_t k = std::stoull(key);
        int32_t target = val.get<int32_t>();
        if (k >= t.exponent || target < 0 || static_cast<size_t>(target) >= c)
          fail("FormatError", "power map entry out of range");
        t.power_maps[k][j] = target;
      }
    }
    for (uint64_t k = 0; k < t.exponent; ++k)
      for (size_t j = 0; j < c; ++j)
        if (t.power_maps[k][j] < 0) fail("FormatError", "missing power map entry");
    t.inverse_class.resize(c);
    for (size_t j = 0; j < c; ++j) {
      uint64_t o = t.class_orders[j];
      t.inverse_class[j] = t.power_maps[(o - 1) % t.exponent][j];
    }
    for (const json& jrow : in.at("irreducibles")) {
      if (jrow.size() != c) fail("FormatError", "irreducible row length mismatch");
      std::vector<Cyclotomic> row;
      for (const json& jval : jrow) {
        std::vector<std::pair<uint64_t, mpz_class>> terms;
        for (const json& jterm : jval) {
          long coef = jterm.at(0).get<long>();
          uint64_t k = jterm.at(1).get<uint64_t>();
          if (k >= t.exponent) fail("FormatError", "value exponent out of range");
          terms.emplace_back(k, mpz_class(coef));
        }
        row.push_back(Cyclotomic::from_terms(t.exponent, std::move(terms)));
      }
      if (!row[0].is_integer() || row[0].integer_value() <= 0)
        fail("InvariantViolation", "character degree is not a positive integer");
      t.degrees.push_back(static_cast<uint64_t>(row[0].integer_value().get_ui()));
      t.irreducibles.push_back(std::move(row));
    }
  } catch (const json::exception& ex) {
    fail("FormatError", std::string("bad table JSON: ") + ex.what());
  }
  validate_table(t);
  return t;
}

CharacterTable import_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("FormatError", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return import_table_json(ss.str());
}

void export_table_file(const CharacterTable& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("FormatError", "cannot write " + path);
  out << export_table_json(t) << "\n";
}

std::vector<uint64_t> restrict_character(const CharacterTable& group_table, size_t chi,
                                         const std::vector<int32_t>& fusion,
                                         const CharacterTable& sub_table) {
  size_t hc = sub_table.num_classes();
  if (fusion.size() != hc)
    fail("NonIntegralMultiplicity", "fusion length differs from subgroup class count");
  uint64_t lcm_e = std::lcm(group_table.exponent, sub_table.exponent);
  std::vector<uint64_t> mult(hc, 0);
  mpz_class degree_check = 0;
  for (size_t psi = 0; psi < hc; ++psi) {
    Cyclotomic acc(lcm_e);
    for (size_t j = 0; j < hc; ++j) {
      Cyclotomic chi_val = group_table.irreducibles[chi][fusion[j]].to_modulus(lcm_e);
      Cyclotomic psi_val = sub_table.irreducibles[psi][j].to_modulus(lcm_e);
      acc += (chi_val * psi_val.conjugate())
                 .scaled(mpz_class(static_cast<unsigned long>(sub_table.class_sizes[j])));
    }
    Cyclotomic quot;
    if (!acc.divide_exact(mpz_class(static_cast<unsigned long>(sub_table.order)), quot) ||
        !quot.is_integer() || quot.integer_value() < 0)
      fail("NonIntegralMultiplicity",
           "restriction multiplicity is not a non-negative integer");
    mult[psi] = static_cast<uint64_t>(quot.integer_value().get_ui());
    degree_check += quot.integer_value() *
                    mpz_class(static_cast<unsigned long>(sub_table.degrees[psi]));
  }
  if (degree_check != static_cast<unsigned long>(group_table.degrees[chi]))
    fail("NonIntegralMultiplicity",
         "restricted degrees do not sum to the character degree");
  return mult;
}

} // namespace blockheight
