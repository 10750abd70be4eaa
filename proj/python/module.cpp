#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "blockheight/blocktheory.hpp"
#include "blockheight/combinatorics.hpp"
#include "blockheight/corpus.hpp"
#include "blockheight/errors.hpp"
#include "blockheight/groupio.hpp"
#include "blockheight/pgroups.hpp"

namespace py = pybind11;
using namespace blockheight;

namespace {

// Thin wrapper owning a group and re-using its computed table.
struct Group {
  PermGroup g;
  std::optional<CharacterTable> table;

  const CharacterTable& the_table() {
    if (!table) table = dixon_schneider(g);
    return *table;
  }
};

Group group_from_generators(const std::string& name, size_t degree,
                            const std::vector<std::vector<int>>& gens, uint64_t cap) {
  std::vector<Perm> perms;
  for (const auto& images : gens) {
    Perm p;
    for (int x : images) {
      if (x < 1 || static_cast<size_t>(x) > degree)
        fail("FormatError", "generator image out of range");
      p.push_back(static_cast<uint16_t>(x - 1));
    }
    perms.push_back(std::move(p));
  }
  Group out{PermGroup(name, degree, std::move(perms)), std::nullopt};
  out.g.enumerate(cap);
  return out;
}

py::object mh_to_py(const std::optional<uint32_t>& mh) {
  if (!mh) return py::none();
  return py::int_(*mh);
}

} // namespace

PYBIND11_MODULE(_blockheight, m) {
  m.doc() = "exact p-block and character-height computations for finite groups";

  py::register_exception<Error>(m, "BlockheightError");

  py::class_<Group>(m, "Group")
      .def_property_readonly("name", [](const Group& s) { return s.g.name(); })
      .def_property_readonly("order", [](const Group& s) { return s.g.order(); })
      .def_property_readonly("degree", [](const Group& s) { return s.g.degree(); })
      .def_property_readonly("num_classes",
                             [](const Group& s) { return s.g.conjugacy_classes().count(); })
      .def("stabilizer_chain_order",
           [](const Group& s) { return s.g.stabilizer_chain_order().get_str(); })
      .def("character_table_json",
           [](Group& s) { return export_table_json(s.the_table()); })
      .def("degrees", [](Group& s) { return s.the_table().degrees; })
      .def("block_partition_json",
           [](Group& s, uint64_t p) {
             BlockPartition bp = block_partition(s.the_table(), p);
             return block_partition_json(s.the_table(), bp).dump(1);
           })
      .def("verify_em_json",
           [](Group& s, uint64_t p) {
             return em_report_json(verify_em(s.the_table(), &s.g, p)).dump(1);
           })
      .def("sylow", [](const Group& s, uint64_t p) {
        return Group{sylow_subgroup(s.g, p), std::nullopt};
      })
      .def("export_group_json", [](const Group& s) { return write_group_json(s.g); });

  m.def("group", &group_from_generators, py::arg("name"), py::arg("degree"),
        py::arg("generators"), py::arg("cap") = kDefaultEnumerationCap,
        "group from 1-based generator image arrays");
  m.def(
      "load_group",
      [](const std::string& path, uint64_t cap) {
        GroupFile gf = read_group_file(path);
        gf.group.enumerate(cap);
        return Group{std::move(gf.group), std::nullopt};
      },
      py::arg("path"), py::arg("cap") = kDefaultEnumerationCap);
  m.def("load_table_json", [](const std::string& path) {
    return export_table_json(import_table_file(path));
  });

  m.def(
      "metacyclic",
      [](uint64_t p, uint32_t mm, uint32_t n, uint64_t r, uint64_t cap) {
        return Group{metacyclic({p, mm, n, r}, cap), std::nullopt};
      },
      py::arg("p"), py::arg("m"), py::arg("n"), py::arg("r"),
      py::arg("cap") = kDefaultEnumerationCap);
  m.def(
      "wreath",
      [](uint32_t d, uint32_t a, uint64_t cap) {
        return Group{wreath_cyclic_symmetric(d, a, cap), std::nullopt};
      },
      py::arg("d"), py::arg("a"), py::arg("cap") = kDefaultEnumerationCap);
  m.def(
      "mh_pgroup",
      [](const Group& s, uint64_t p) { return mh_to_py(mh_pgroup(s.g, p)); },
      py::arg("group"), py::arg("p"),
      "minimal log_p degree of a non-linear irreducible; None means infinity");

  m.def("hook_lengths", &hook_lengths);
  m.def("degree_sn", [](const Partition& p) { return degree_sn(p).get_str(); });
  m.def("ell_core", &ell_core);
  m.def("is_ell_core", &is_ell_core);
  m.def("core_existence", [](uint32_t a, uint32_t ell) -> py::object {
    auto found = core_existence(a, ell);
    if (!found) return py::none();
    return py::make_tuple(found->first, found->second);
  });
  m.def("wreath_degree",
        [](const WreathLabel& label) { return wreath_degree(label).get_str(); });
  m.def("check_unipdef", [](uint32_t d, uint32_t a, uint64_t ell) -> py::object {
    auto witness = check_unipdef(d, a, ell);
    if (!witness) return py::none();
    return py::cast(*witness);
  });

  m.def(
      "run_corpus",
      [](const std::string& dir, unsigned workers) {
        CorpusReport rep = run_corpus(dir, workers);
        return rep.to_json().dump(1);
      },
      py::arg("directory"), py::arg("workers") = 4);
}
