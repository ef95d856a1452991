// qlab: command-line front end to the workbench.
//
// Exit status: 0 when every selected check passes (or fails as the document
// expects), 1 when some check does not, 2 on usage, parse or build errors.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qlab/kernels.hpp"
#include "qlab/workbench/checks.hpp"
#include "qlab/workbench/corpus.hpp"
#include "qlab/workbench/report.hpp"
#include "qlab/workbench/serialize.hpp"

using namespace qlab;

namespace {

struct Common {
  std::string file;
  std::size_t max_size = 0;
  bool parallel = false;
};

Limits limits_of(const Common& c) {
  Limits l;
  if (c.max_size) {
    l.lattice = c.max_size;
    l.quantale_scan = c.max_size;
  }
  return l;
}

// A structure named by a generator call such as rel(2), or by its name in
// --file (the corpus file by default).
struct Resolved {
  Environment env;
  const Entry* entry = nullptr;
};

Resolved resolve(const std::string& name, const Common& c) {
  Resolved r;
  dsl::SpecDocument doc;
  if (name.find('(') != std::string::npos)
    doc = dsl::parse_spec("generate " + dsl::quote_id(name) + " = " + name);
  else
    doc = dsl::parse_spec_file(c.file.empty() ? corpus_file() : c.file);
  r.env = build_environment(doc, limits_of(c));
  r.entry = r.env.find(name);
  if (!r.entry) throw Error(ErrorKind::UnresolvedName, "no structure '" + name + "'");
  if (r.entry->failure) throw *r.entry->failure;
  return r;
}

const SupportedQuantale& as_based(const Entry& e) {
  if (!e.based || e.kind != EntryKind::based)
    throw Error(ErrorKind::UnresolvedName, "'" + e.name + "' is a " + std::string(to_string(e.kind)) +
                                               ", expected a based quantale");
  return *e.based;
}

// The groupoid quantale of an entry: certified directly, or O(G).
GroupoidQuantale groupoid_quantale_of(const Entry& e) {
  if (e.kind == EntryKind::groupoid) return quantale_from_groupoid(e.groupoid->groupoid);
  return certify(as_based(e));
}

std::string labels(const FinSupLattice& l, const std::vector<Elem>& f, const FinSupLattice& target) {
  std::ostringstream o;
  for (Elem x = 0; x < f.size(); ++x) o << "  " << l.label(x) << " -> " << target.label(f[x]) << '\n';
  return o.str();
}

int print_records(const std::vector<CheckRecord>& records, const std::string& format) {
  std::cout << (format == "json" ? report_json(records) : report_text(records));
  return all_as_expected(records) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite supported quantales and localic groupoids"};
  app.require_subcommand(1);
  Common common;
  std::string report = "text";
  bool timing = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--file", common.file, "specification file holding named structures");
    sub->add_option("--max-size", common.max_size, "largest carrier to check; larger ones are skipped(size)");
    sub->add_flag("--parallel", common.parallel, "OpenMP kernels and concurrent structures");
  };

  std::string path;
  auto* parse = app.add_subcommand("parse", "parse a file and print it in canonical form");
  parse->add_option("FILE", path)->required();

  std::vector<std::string> select;
  auto* check = app.add_subcommand("check", "run the checks a file declares");
  check->add_option("FILE", path)->required();
  check->add_option("--select", select, "checks to run instead of the declared ones")->delimiter(',');
  check->add_option("--report", report)->check(CLI::IsMember({"json", "text"}));
  check->add_flag("--timing", timing, "record wall-clock milliseconds");
  add_common(check);

  std::string what, name, second;
  auto* construct = app.add_subcommand("construct", "print the other side of the correspondence");
  construct->add_option("KIND", what)->required()->check(CLI::IsMember({"quantale", "groupoid"}));
  construct->add_option("NAME", name)->required();
  add_common(construct);

  auto* roundtrip = app.add_subcommand("roundtrip", "reconstruct a structure and find the isomorphism");
  roundtrip->add_option("NAME", name)->required();
  add_common(roundtrip);

  auto* principal = app.add_subcommand("principal", "principality, or effectiveness for groupoids");
  principal->add_option("NAME", name)->required();
  add_common(principal);

  auto* pair = app.add_subcommand("pair", "the pair groupoid quantale Q (x)_A Q");
  pair->add_option("NAME", name)->required();
  add_common(pair);

  std::optional<std::string> over;
  auto* tensor = app.add_subcommand("tensor", "L (x) M, or Q_L (x)_A Q_M over a shared base");
  tensor->add_option("L", name)->required();
  tensor->add_option("M", second)->required();
  tensor->add_flag("--over", [&](std::int64_t) { over = "base"; },
                   "L and M are based quantales over the same frame A");
  add_common(tensor);

  auto* enumerate = app.add_subcommand("enumerate", "brute-force enumeration");
  enumerate->add_option("KIND", what)->required()->check(CLI::IsMember({"supports", "homs"}));
  enumerate->add_option("NAME", name)->required();
  enumerate->add_option("TARGET", second, "target of homs");
  add_common(enumerate);

  auto* corpus = app.add_subcommand("corpus", "the example corpus");
  auto* corpus_run = corpus->add_subcommand("run", "check the corpus file");
  corpus->require_subcommand(1);
  corpus_run->add_option("--report", report)->check(CLI::IsMember({"json", "text"}));
  corpus_run->add_flag("--timing", timing, "record wall-clock milliseconds");
  add_common(corpus_run);

  CLI11_PARSE(app, argc, argv);
  if (common.parallel) kernels::set_default_exec(kernels::Exec::parallel);

  try {
    if (*parse) {
      std::cout << dsl::print_spec(dsl::parse_spec_file(path));
      return 0;
    }
    if (*check || *corpus_run) {
      const auto doc = dsl::parse_spec_file(*check ? path : (common.file.empty() ? corpus_file() : common.file));
      RunOptions opts;
      opts.limits = limits_of(common);
      opts.select = select;
      opts.parallel = common.parallel;
      opts.timing = timing;
      return print_records(run_checks(doc, opts), report);
    }
    if (*construct) {
      const Resolved r = resolve(name, common);
      if (what == "quantale") {
        const GroupoidQuantale q = groupoid_quantale_of(*r.entry);
        std::cout << dsl::print_spec(spec_of(name + "_quantale", as_supported(q)));
      } else {
        const LocalicGroupoid g = r.entry->kind == EntryKind::groupoid
                                      ? r.entry->groupoid->groupoid
                                      : groupoid_from_quantale(certify(as_based(*r.entry))).groupoid;
        std::cout << dsl::print_spec(spec_of(name + "_groupoid", g));
      }
      return 0;
    }
    if (*roundtrip) {
      const Resolved r = resolve(name, common);
      const GroupoidRoundTrip rt = r.entry->kind == EntryKind::groupoid
                                       ? roundtrip_check(r.entry->groupoid->groupoid)
                                       : roundtrip_check(certify(as_based(*r.entry)));
      const auto& g = rt.groupoid.groupoid;
      std::cout << "isomorphism found\narrows / quantale:\n" << labels(g.o1(), rt.iso.carrier, g.o1())
                << "objects / base:\n" << labels(g.o0(), rt.iso.base, g.o0());
      return 0;
    }
    if (*principal) {
      const Resolved r = resolve(name, common);
      if (r.entry->kind == EntryKind::groupoid) {
        const auto e = check_effective_equivalence(r.entry->groupoid->groupoid);
        std::cout << "effective: " << (e.effective ? "yes" : "no") << "\nprincipal: " << (e.principal ? "yes" : "no")
                  << "\nkernel pair: " << e.kernel_pair_size << " elements\n";
        if (!e.witness.empty()) std::cout << "witness: " << format_witness(e.witness) << '\n';
        return e.effective ? 0 : 1;
      }
      const auto& q = as_based(*r.entry);
      const auto d = q.sigma ? std::variant<Support, NoSupport>(check_support(q.based, *q.sigma))
                             : derive_support(q.based);
      if (auto* n = std::get_if<NoSupport>(&d)) throw Error(ErrorKind::NoSupport, n->reason, n->witness);
      const auto p = check_principal(q.based, std::get<Support>(d));
      std::cout << "principal: " << (p.principal ? "yes" : "no") << "\n|R (x)_T L| = " << p.rl_tensor_size
                << "\ncokernel pair: " << p.pushout_size << " elements\n";
      if (!p.witness.empty()) std::cout << "witness: " << format_witness(p.witness) << '\n';
      return p.principal ? 0 : 1;
    }
    if (*pair) {
      const Resolved r = resolve(name, common);
      const PairGroupoid pg = pair_groupoid(groupoid_quantale_of(*r.entry));
      std::cout << "Q (x)_A Q: " << pg.carrier.size() << " elements\ngroupoid quantale: "
                << (pg.quantale.report.all() ? "yes" : "no") << "\nisomorphic to the quantale of the pair groupoid: yes\n";
      return pg.quantale.report.all() ? 0 : 1;
    }
    if (*tensor) {
      const Resolved l = resolve(name, common);
      const Resolved m = resolve(second, common);
      std::optional<TensorLattice> t;
      if (over) {
        const auto& ql = as_based(*l.entry).based;
        const auto& qm = as_based(*m.entry).based;
        if (!ql.base().same_as(qm.base())) throw Error(ErrorKind::BadAction, "the bases differ");
        BaseAction act{ql.base_ptr(), std::vector<Elem>(ql.ract_table().begin(), ql.ract_table().end()),
                       std::vector<Elem>(qm.lact_table().begin(), qm.lact_table().end())};
        t = tensor_over_base(ql.lattice_ptr(), qm.lattice_ptr(), std::move(act));
      } else {
        t = sup_tensor(l.entry->lattice, m.entry->lattice);
      }
      std::cout << t->size() << " elements\n";
      for (Elem e = 0; e < t->size(); ++e) std::cout << "  " << t->carrier().label(e) << '\n';
      return 0;
    }
    if (*enumerate) {
      const Resolved r = resolve(name, common);
      const auto& src = as_based(*r.entry);
      const Limits lim = limits_of(common);
      if (what == "supports") {
        const auto all = enumerate_supports(src.based, lim.enumeration);
        std::cout << all.size() << " supports\n";
        for (const auto& s : all) {
          std::cout << "stable=" << s.stable << " equivariant=" << s.equivariant << '\n'
                    << labels(src.based.lattice(), {s.sigma.values().begin(), s.sigma.values().end()},
                              src.based.base());
        }
        return 0;
      }
      if (second.empty()) throw CLI::ValidationError("enumerate homs needs a TARGET");
      const Resolved t = resolve(second, common);
      const auto& dst = as_based(*t.entry);
      const auto homs = enumerate_homs(src.based, dst.based, src.sigma ? &*src.sigma : nullptr,
                                       dst.sigma ? &*dst.sigma : nullptr, lim.enumeration);
      std::cout << homs.size() << " homomorphisms\n";
      for (const auto& h : homs) {
        std::cout << "strong=" << h.report.strong;
        if (h.report.support_commuting) std::cout << " support-commuting=" << *h.report.support_commuting;
        std::cout << "\n" << labels(src.based.lattice(), h.f1, dst.based.lattice());
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "qlab: " << e.what();
    if (!e.witness().empty()) std::cerr << " [" << format_witness(e.witness()) << "]";
    std::cerr << '\n';
    return 2;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  }
  return 0;
}
