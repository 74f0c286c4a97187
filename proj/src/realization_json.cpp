#include "pickrealize/realization_json.hpp"

namespace pickrealize {

namespace {

std::string to_string(WitnessKind k) { return k == WitnessKind::Wronskian ? "wronskian" : "pick_violation"; }

std::string to_string(WitnessSpace s) {
  switch (s) {
    case WitnessSpace::Original: return "original";
    case WitnessSpace::Reduced: return "reduced";
    case WitnessSpace::Lifted: return "lifted";
  }
  return "original";
}

std::size_t get_size(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !(it->is_number_unsigned() || it->is_number_integer()) || it->get<long long>() < 0)
    throw InputError(std::string("realization.") + key + ": expected a non-negative integer");
  return it->get<std::size_t>();
}

}  // namespace

Json to_json(const CertificateReport& r) {
  Json j;
  j["passed"] = r.passed();
  j["points"] = r.points;
  j["skipped"] = r.skipped;
  j["max_eval_error"] = r.max_eval_error;
  j["eval_ok"] = r.eval_ok;
  j["min_pick_eigenvalue"] = r.min_pick_eigenvalue;
  j["pick_ok"] = r.pick_ok;
  j["hermitian_defect"] = r.hermitian_defect;
  j["hermitian_ok"] = r.hermitian_ok;
  j["projectors_ok"] = r.projectors_ok;
  j["identity_residual"] = r.identity_residual;
  j["identity_ok"] = r.identity_ok;
  return j;
}

Json to_json(const SOSFactor& f) {
  Json j;
  j["phi"] = to_json(f.phi);
  j["residual"] = f.residual;
  j["rank"] = f.rank();
  return j;
}

Json to_json(const Witness& w) {
  Json j;
  j["kind"] = to_string(w.kind);
  j["variables"] = to_string(w.space);
  j["point"] = point_to_json(w.point);
  if (w.kind == WitnessKind::Wronskian) j["wronskian"] = w.variable;
  j["eigenvalue"] = w.eigenvalue;
  return j;
}

Json to_json(const PickVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  Json certs = Json::array();
  for (const auto& c : v.certificates) {
    Json e = to_json(c.factor);
    e["variable"] = c.variable;
    certs.push_back(std::move(e));
  }
  j["certificates"] = std::move(certs);
  j["report"] = v.report;
  return j;
}

Json realization_to_json(const Realization& r) {
  Json j;
  j["form"] = to_string(form_of(r));
  std::visit(
      [&](const auto& x) {
        j["m"] = x.m;
        j["n0"] = x.structure.n0;
        j["blocks"] = x.structure.blocks;
        j["H"] = complex_matrix_to_json(x.H);
        j["hermitian"] = x.hermitian;
      },
      r);
  if (const auto* p = std::get_if<PencilRealization>(&r)) {
    Json a = Json::array();
    for (const auto& ak : p->A) a.push_back(complex_matrix_to_json(ak));
    j["A"] = std::move(a);
  }
  return j;
}

Realization realization_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("realization: expected an object");
  if (auto v = j.find("schema_version"); v != j.end() && (!v->is_string() || v->get<std::string>() != kSchemaVersion))
    throw InputError("realization.schema_version: unsupported version");
  auto form_it = j.find("form");
  if (form_it == j.end() || !form_it->is_string()) throw InputError("realization.form: expected a string");
  const RealizationForm form = parse_form(form_it->get<std::string>());
  const std::size_t m = get_size(j, "m");
  BlockStructure s;
  s.n0 = get_size(j, "n0");
  auto blocks = j.find("blocks");
  if (blocks == j.end() || !blocks->is_array()) throw InputError("realization.blocks: expected an array");
  for (const auto& b : *blocks) {
    if (!(b.is_number_unsigned() || b.is_number_integer()) || b.get<long long>() < 0)
      throw InputError("realization.blocks: expected non-negative integers");
    s.blocks.push_back(b.get<std::size_t>());
  }
  auto h_it = j.find("H");
  if (h_it == j.end()) throw InputError("realization: missing key \"H\"");
  Eigen::MatrixXcd h = complex_matrix_from_json(*h_it, "realization.H");
  const bool hermitian = j.value("hermitian", false);
  if (h.rows() != h.cols()) throw InputError("realization.H: must be square");

  const auto size = static_cast<std::size_t>(h.rows());
  switch (form) {
    case RealizationForm::Schur:
      if (size != m + s.total()) throw InputError("realization.H: size differs from m + n0 + sum(blocks)");
      return SchurRealization{h, m, s, hermitian, std::nullopt};
    case RealizationForm::Transfer:
      if (size != m + s.total()) throw InputError("realization.H: size differs from m + n0 + sum(blocks)");
      return TransferRealization{h, m, s, hermitian};
    case RealizationForm::Pencil: {
      PencilRealization p{h, m, s, {}, hermitian};
      auto a_it = j.find("A");
      if (a_it == j.end() || !a_it->is_array()) throw InputError("realization.A: expected an array of matrices");
      for (std::size_t k = 0; k < a_it->size(); ++k) {
        Eigen::MatrixXcd a = complex_matrix_from_json((*a_it)[k], "realization.A[" + std::to_string(k) + "]");
        if (a.rows() != h.rows() || a.cols() != h.cols()) throw InputError("realization.A: size differs from H");
        p.A.push_back(std::move(a));
      }
      return p;
    }
  }
  throw InputError("realization.form: unknown form");
}

}  // namespace pickrealize
