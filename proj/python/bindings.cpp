#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

#include "segwt/container.hpp"
#include "segwt/delta_segment_index.hpp"
#include "segwt/oracle.hpp"
#include "segwt/segment_index.hpp"
#include "segwt/segments.hpp"

namespace py = pybind11;
using namespace segwt;

namespace {

using Triple = std::tuple<std::size_t, std::size_t, std::size_t>;

Triple as_tuple(const Segment& s) { return {s.x_left, s.x_right, s.y}; }

RankSpaceInstance make_instance(const std::vector<Triple>& segs) {
    std::vector<Segment> v;
    v.reserve(segs.size());
    for (const auto& [l, r, y] : segs) v.push_back({l, r, y});
    return validate_instance(std::move(v));
}

std::vector<Triple> instance_segments(const RankSpaceInstance& inst) {
    std::vector<Triple> out;
    for (const Segment& s : inst.segments()) out.push_back(as_tuple(s));
    return out;
}

py::dict space_dict(const SpaceReport& rep) {
    py::dict d;
    d["n"] = rep.n;
    d["payload_bits"] = rep.total.payload_bits;
    d["overhead_bits"] = rep.total.overhead_bits;
    d["total_bits"] = rep.total.total_bits();
    d["ratio"] = rep.ratio() ? py::cast(*rep.ratio()) : py::none();
    d["linear_constant"] = rep.linear_constant() ? py::cast(*rep.linear_constant()) : py::none();
    return d;
}

py::bytes to_bytes(IndexContainer c) {
    const auto bytes = c.serialize();
    return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

py::object from_container(IndexContainer c) {
    if (auto* b = std::get_if<SegmentIndex>(&c.index)) return py::cast(std::move(*b));
    return py::cast(std::move(std::get<DeltaSegmentIndex>(c.index)));
}

py::object load_bytes(py::bytes data) {
    const std::string s = data;
    const auto* p = reinterpret_cast<const std::uint8_t*>(s.data());
    return from_container(IndexContainer::load(std::span<const std::uint8_t>(p, s.size())));
}

template <class Index>
void bind_queries(py::class_<Index>& cls) {
    cls.def_property_readonly("n", &Index::n)
        .def_property_readonly("height", &Index::height)
        .def("access", [](const Index& idx, std::size_t y) { return as_tuple(idx.access(y)); }, py::arg("y"))
        .def("select", [](const Index& idx, std::size_t i, std::size_t j) { return idx.select(i, j); },
             py::arg("i"), py::arg("j"))
        .def("rank", [](const Index& idx, std::size_t i, std::size_t y) { return idx.rank(i, y); }, py::arg("i"),
             py::arg("y"))
        .def("crossing_count", &Index::crossing_count, py::arg("i"))
        .def("node_visits",
             [](const Index& idx, const std::string& op, std::size_t a, std::size_t b) {
                 QueryStats st;
                 if (op == "access") idx.access(a, &st);
                 else if (op == "select") idx.select(a, b, &st);
                 else if (op == "rank") idx.rank(a, b, &st);
                 else throw py::value_error("unknown query '" + op + "'");
                 return st.node_visits;
             },
             py::arg("op"), py::arg("a"), py::arg("b") = 0)
        .def("space", [](const Index& idx) { return space_dict(idx.space_report()); })
        .def("to_bytes", [](const Index& idx) { return to_bytes(IndexContainer{idx, std::nullopt}); })
        .def("save", [](const Index& idx, const std::string& path) { IndexContainer{idx, std::nullopt}.save_file(path); },
             py::arg("path"))
        .def(py::self == py::self);
}

}  // namespace

PYBIND11_MODULE(_segwt, m) {
    m.doc() = "Succinct indexes for horizontal segments in rank space";

    // Class handles live for the interpreter's lifetime.
    static const py::handle error = py::exception<Error>(m, "Error").release();
    auto sub = [&](const char* name) { return py::exception<Error>(m, name, error).release(); };
    static const py::handle range_error = sub("RangeError"), not_found = sub("NotFoundError"),
                            validation = sub("ValidationError"), tie = sub("TieError"), parse = sub("ParseError"),
                            limit = sub("LimitError"), format = sub("FormatError"), io = sub("IoError");
    py::register_exception_translator([](std::exception_ptr p) {
        auto raise = [](py::handle cls, const Error& e, const char* attr = nullptr, py::object value = {}) {
            py::object obj = cls(e.what());
            if (attr) obj.attr(attr) = value;
            PyErr_SetObject(cls.ptr(), obj.ptr());
        };
        try {
            if (p) std::rethrow_exception(p);
        } catch (const RangeError& e) {
            raise(range_error, e);
        } catch (const NotFoundError& e) {
            raise(not_found, e, "available", py::cast(e.available()));
        } catch (const ValidationError& e) {
            raise(validation, e, "coordinate", py::cast(e.coordinate()));
        } catch (const TieError& e) {
            raise(tie, e, "value", py::cast(e.value()));
        } catch (const ParseError& e) {
            raise(parse, e, "line", py::cast(e.line()));
        } catch (const LimitError& e) {
            raise(limit, e);
        } catch (const FormatError& e) {
            raise(format, e);
        } catch (const IoError& e) {
            raise(io, e);
        } catch (const Error& e) {
            raise(error, e);
        }
    });

    py::class_<RankSpaceInstance>(m, "Instance")
        .def(py::init(&make_instance), py::arg("segments"))
        .def_property_readonly("n", &RankSpaceInstance::n)
        .def("segments", &instance_segments)
        .def(py::self == py::self);

    m.def(
        "reduce",
        [](const std::vector<std::tuple<double, double, double>>& raw, bool strict) {
            std::vector<RawSegment> v;
            for (const auto& [l, r, y] : raw) v.push_back({l, r, y});
            auto red = rank_space_reduce(v, strict ? TieMode::strict : TieMode::deterministic);
            return std::make_tuple(std::move(red.instance), red.maps.x_values, red.maps.y_values);
        },
        py::arg("raw"), py::arg("strict") = true,
        "Rank-space reduction; returns (instance, x_values, y_values).");

    py::class_<SegmentIndex> binary(m, "BinaryIndex");
    binary.def(py::init<const RankSpaceInstance&>(), py::arg("instance"));
    bind_queries(binary);

    py::class_<DeltaSegmentIndex> delta(m, "DeltaIndex");
    delta.def(py::init([](const RankSpaceInstance& inst, std::size_t d, double epsilon, const std::string& backend,
                          std::size_t block_multiplier) {
                  DeltaSegmentIndex::Options o;
                  o.delta = d;
                  o.epsilon = epsilon;
                  if (backend == "wavelet") o.backend = SlabBackend::wavelet;
                  else if (backend == "block") o.backend = SlabBackend::block_table;
                  else throw py::value_error("backend must be 'wavelet' or 'block'");
                  o.block_multiplier = block_multiplier;
                  return DeltaSegmentIndex(inst, o);
              }),
              py::arg("instance"), py::arg("delta") = 0, py::arg("epsilon") = 0.5, py::arg("backend") = "wavelet",
              py::arg("block_multiplier") = 1)
        .def_property_readonly("delta", &DeltaSegmentIndex::delta)
        .def_property_readonly("backend", [](const DeltaSegmentIndex& idx) { return to_string(idx.backend()); });
    bind_queries(delta);

    m.def("load_bytes", &load_bytes, py::arg("data"));
    m.def("load", [](const std::string& path) { return from_container(IndexContainer::load_file(path)); },
          py::arg("path"));

    m.def("oracle_access", [](const RankSpaceInstance& inst, std::size_t y) { return as_tuple(oracle_access(inst, y)); },
          py::arg("instance"), py::arg("y"));
    m.def("oracle_select", &oracle_select, py::arg("instance"), py::arg("i"), py::arg("j"));
    m.def("oracle_rank", &oracle_rank, py::arg("instance"), py::arg("i"), py::arg("y"));
    m.def("oracle_crossing_count", &oracle_crossing_count, py::arg("instance"), py::arg("i"));
    m.def("random_instance", &random_instance, py::arg("n"), py::arg("seed"));
    m.def("count_instances", &count_instances, py::arg("n"));
    m.def("expected_instance_count", &expected_instance_count, py::arg("n"));
}
