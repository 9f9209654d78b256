#include "maf/lp_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "maf/errors.hpp"

namespace maf {

int LpModel::add_variable(std::string name, double lower, std::optional<double> upper, bool integer) {
  if (var_index_.contains(name)) throw InputError("duplicate variable name " + name);
  const int id = static_cast<int>(vars_.size());
  var_index_.emplace(name, id);
  vars_.push_back({std::move(name), lower, upper, integer});
  return id;
}

void LpModel::add_constraint(std::string name, std::vector<LpTerm> terms, Sense sense, double rhs) {
  if (row_index_.contains(name)) throw InputError("duplicate constraint name " + name);
  for (const LpTerm& t : terms)
    if (t.var < 0 || t.var >= static_cast<int>(vars_.size()))
      throw InputError("constraint " + name + " references an undeclared variable");
  row_index_.emplace(name, static_cast<int>(rows_.size()));
  rows_.push_back({std::move(name), std::move(terms), sense, rhs});
}

void LpModel::set_objective(std::vector<LpTerm> terms, double constant, bool minimize) {
  for (const LpTerm& t : terms)
    if (t.var < 0 || t.var >= static_cast<int>(vars_.size()))
      throw InputError("objective references an undeclared variable");
  objective_ = std::move(terms);
  constant_ = constant;
  minimize_ = minimize;
}

int LpModel::find_variable(const std::string& name) const {
  auto it = var_index_.find(name);
  return it == var_index_.end() ? -1 : it->second;
}

PointReport check_feasible_point(const LpModel& model, const LpPoint& point, double tolerance) {
  std::vector<double> x(model.variables().size(), 0.0);
  for (const auto& [name, value] : point) {
    const int id = model.find_variable(name);
    if (id < 0) throw InputError("unknown variable " + name);
    x[id] = value;
  }
  PointReport rep;
  auto note = [&](const std::string& what, double excess) {
    if (excess <= tolerance) return;
    rep.feasible = false;
    rep.violations.push_back(what);
    rep.max_violation = std::max(rep.max_violation, excess);
  };
  for (size_t i = 0; i < x.size(); ++i) {
    const LpVariable& v = model.variables()[i];
    note("bound:" + v.name, v.lower - x[i]);
    if (v.upper) note("bound:" + v.name, x[i] - *v.upper);
  }
  for (const LpConstraint& row : model.constraints()) {
    double lhs = 0.0;
    for (const LpTerm& t : row.terms) lhs += t.coef * x[t.var];
    switch (row.sense) {
      case Sense::kLessEqual: note(row.name, lhs - row.rhs); break;
      case Sense::kGreaterEqual: note(row.name, row.rhs - lhs); break;
      case Sense::kEqual: note(row.name, std::abs(lhs - row.rhs)); break;
    }
  }
  rep.objective = model.objective_constant();
  for (const LpTerm& t : model.objective()) rep.objective += t.coef * x[t.var];
  return rep;
}

namespace {

std::string num(double v) {
  char buf[64];
  if (std::abs(v) < 1e15 && v == std::floor(v))
    std::snprintf(buf, sizeof buf, "%.0f", v);
  else
    std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr int kTermsPerLine = 8;

// Writes " name: t1 + t2 ..." with at most kTermsPerLine terms per line.
void write_expr(std::ostream& out, const std::string& label, const LpModel& model,
                const std::vector<LpTerm>& terms) {
  out << ' ' << label << ':';
  int on_line = 0;
  bool first = true;
  for (const LpTerm& t : terms) {
    if (t.coef == 0.0) continue;
    if (on_line == kTermsPerLine) {
      out << "\n   ";
      on_line = 0;
    }
    const double mag = std::abs(t.coef);
    out << ' ';
    if (t.coef < 0)
      out << "- ";
    else if (!first)
      out << "+ ";
    if (mag != 1.0) out << num(mag) << ' ';
    out << model.variables()[t.var].name;
    first = false;
    ++on_line;
  }
  if (first) out << " 0";
}

}  // namespace

void write_lp(const LpModel& model, std::ostream& out) {
  out << (model.minimize() ? "Minimize\n" : "Maximize\n");
  write_expr(out, "obj", model, model.objective());
  if (const double c = model.objective_constant(); c != 0.0) out << (c < 0 ? " - " : " + ") << num(std::abs(c));
  out << "\nSubject To\n";
  for (const LpConstraint& row : model.constraints()) {
    write_expr(out, row.name, model, row.terms);
    const char* op = row.sense == Sense::kLessEqual ? "<=" : row.sense == Sense::kGreaterEqual ? ">=" : "=";
    out << ' ' << op << ' ' << num(row.rhs) << '\n';
  }
  std::vector<const LpVariable*> bounded, general;
  for (const LpVariable& v : model.variables()) {
    if (v.lower != 0.0 || v.upper) bounded.push_back(&v);
    if (v.integer) general.push_back(&v);
  }
  if (!bounded.empty()) {
    out << "Bounds\n";
    for (const LpVariable* v : bounded) {
      const std::string lo = std::isinf(v->lower) ? "-inf" : num(v->lower);
      if (v->upper)
        out << ' ' << lo << " <= " << v->name << " <= " << num(*v->upper) << '\n';
      else
        out << ' ' << v->name << " >= " << lo << '\n';
    }
  }
  if (!general.empty()) {
    out << "General\n";
    int on_line = 0;
    for (const LpVariable* v : general) {
      out << ' ' << v->name;
      if (++on_line == kTermsPerLine) {
        out << '\n';
        on_line = 0;
      }
    }
    if (on_line) out << '\n';
  }
  out << "End\n";
}

void write_lp_file(const LpModel& model, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path + " for writing");
  write_lp(model, f);
  f.flush();
  if (!f) throw InputError("failed writing " + path);
}

}  // namespace maf
