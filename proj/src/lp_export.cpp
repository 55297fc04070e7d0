#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_set>

#include "fracx/lp.hpp"

namespace fracx {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool legal_name(const std::string& s) {
    if (s.empty() || s.size() > 255) return false;
    if (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '.' || s[0] == 'e' || s[0] == 'E') return false;
    for (char ch : s) {
        auto c = static_cast<unsigned char>(ch);
        if (!std::isalnum(c) && c != '_' && c != '.') return false;
    }
    return true;
}

void write_terms(std::ostringstream& out, const std::vector<Term>& terms, const std::vector<std::string>& names) {
    int on_line = 0;
    for (const Term& t : terms) {
        if (on_line == 8) {
            out << "\n   ";
            on_line = 0;
        }
        out << (t.coef < 0 ? " - " : " + ") << num(std::abs(t.coef)) << ' ' << names[t.col];
        ++on_line;
    }
}

}  // namespace

std::string export_lp(const LinearModel& model) {
    std::vector<std::string> names(model.num_cols());
    std::unordered_set<std::string> seen;
    for (int j = 0; j < model.num_cols(); ++j) {
        std::string nm = model.column(j).name;
        if (!legal_name(nm) || seen.count(nm)) nm = "c" + std::to_string(j);
        while (seen.count(nm)) nm += "_";
        seen.insert(nm);
        names[j] = nm;
    }

    std::ostringstream out;
    out << "\\ fracx linear model: " << model.num_cols() << " columns, " << model.num_rows() << " rows\n";
    out << (model.sense == Sense::maximize ? "Maximize\n" : "Minimize\n");
    out << " obj:";
    std::vector<Term> obj;
    for (int j = 0; j < model.num_cols(); ++j)
        if (model.column(j).obj != 0.0) obj.push_back({j, model.column(j).obj});
    write_terms(out, obj, names);
    if (model.obj_constant != 0.0) out << (model.obj_constant < 0 ? " - " : " + ") << num(std::abs(model.obj_constant));
    out << "\nSubject To\n";
    for (int r = 0; r < model.num_rows(); ++r) {
        const Row& row = model.row(r);
        out << " r" << r << ":";
        if (row.terms.empty()) out << " 0 " << (names.empty() ? "" : names[0]);
        write_terms(out, row.terms, names);
        switch (row.rel) {
            case Relation::less_equal: out << " <= "; break;
            case Relation::greater_equal: out << " >= "; break;
            case Relation::equal: out << " = "; break;
        }
        out << num(row.rhs) << '\n';
    }
    out << "Bounds\n";
    for (int j = 0; j < model.num_cols(); ++j) {
        const Column& c = model.column(j);
        bool flo = std::isfinite(c.lo), fhi = std::isfinite(c.hi);
        out << ' ';
        if (!flo && !fhi) out << names[j] << " free";
        else if (flo && fhi && c.lo == c.hi) out << names[j] << " = " << num(c.lo);
        else if (flo && fhi) out << num(c.lo) << " <= " << names[j] << " <= " << num(c.hi);
        else if (flo) out << names[j] << " >= " << num(c.lo);
        else out << "-inf <= " << names[j] << " <= " << num(c.hi);
        out << '\n';
    }
    std::vector<std::string> bin, gen;
    for (int j = 0; j < model.num_cols(); ++j) {
        const Column& c = model.column(j);
        if (!c.integer) continue;
        (c.lo == 0.0 && c.hi == 1.0 ? bin : gen).push_back(names[j]);
    }
    if (!bin.empty()) {
        out << "Binary\n";
        for (auto& s : bin) out << ' ' << s << '\n';
    }
    if (!gen.empty()) {
        out << "General\n";
        for (auto& s : gen) out << ' ' << s << '\n';
    }
    out << "End\n";
    return out.str();
}

}  // namespace fracx
