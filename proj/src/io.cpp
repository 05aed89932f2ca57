#include "homcx/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace homcx {

namespace {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

std::uint32_t as_residue(const Json& v, std::uint32_t p, const std::string& where) {
    if (!v.is_number_integer())
        throw ParseError(where + ": expected an integer");
    std::int64_t x = v.get<std::int64_t>();
    if (x < 0 || std::uint64_t(x) >= p)
        throw ParseError(where + ": entry " + std::to_string(x) +
                         " is not a canonical residue mod " + std::to_string(p));
    return std::uint32_t(x);
}

} // namespace

Json algebra_to_json(const Algebra& a) {
    Json j;
    j["p"] = a.p();
    j["dim"] = a.dim();
    j["basis"] = a.basis_labels();
    j["unit"] = a.unit();
    Json mul = Json::array();
    for (int i = 0; i < a.dim(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < a.dim(); ++k) row.push_back(a.mul(i, k));
        mul.push_back(row);
    }
    j["mul"] = mul;
    return j;
}

AlgebraPtr algebra_from_json(const Json& j) {
    if (!j.contains("p") || !j.contains("dim") || !j.contains("unit") || !j.contains("mul"))
        throw ParseError("algebra needs keys p, dim, unit, mul");
    AlgebraData d;
    d.p = j.at("p").get<std::uint32_t>();
    d.dim = j.at("dim").get<int>();
    if (j.contains("basis")) d.basis_labels = j.at("basis").get<std::vector<std::string>>();
    const Json& unit = j.at("unit");
    if (!unit.is_array() || int(unit.size()) != d.dim)
        throw ParseError("key 'unit': expected an array of length dim");
    for (std::size_t i = 0; i < unit.size(); ++i)
        d.unit.push_back(as_residue(unit[i], d.p, "unit[" + std::to_string(i) + "]"));
    const Json& mul = j.at("mul");
    if (!mul.is_array() || int(mul.size()) != d.dim)
        throw ParseError("key 'mul': expected a dim x dim array");
    for (int i = 0; i < d.dim; ++i) {
        if (!mul[i].is_array() || int(mul[i].size()) != d.dim)
            throw ParseError("mul[" + std::to_string(i) + "]: expected dim entries");
        std::vector<std::vector<std::uint32_t>> row;
        for (int k = 0; k < d.dim; ++k) {
            const Json& e = mul[i][k];
            if (!e.is_array() || int(e.size()) != d.dim)
                throw ParseError("mul[" + std::to_string(i) + "][" + std::to_string(k) +
                                 "]: expected a coordinate vector of length dim");
            std::vector<std::uint32_t> coords;
            for (int c = 0; c < d.dim; ++c)
                coords.push_back(as_residue(e[c], d.p,
                                            "mul[" + std::to_string(i) + "][" +
                                                std::to_string(k) + "]"));
            row.push_back(std::move(coords));
        }
        d.mul.push_back(std::move(row));
    }
    auto defects = Algebra::validate(d);
    if (!defects.empty()) {
        std::string msg = "algebra axioms violated:";
        for (std::size_t i = 0; i < defects.size() && i < 6; ++i)
            msg += " " + defects[i].describe();
        throw ValidationError(msg);
    }
    return Algebra::make(std::move(d));
}

Json mat_to_json(const Mat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

Mat mat_from_json(const Json& j, std::uint32_t p) {
    if (!j.is_array()) throw ParseError("matrix: expected an array of rows");
    int rows = int(j.size());
    int cols = rows == 0 ? 0 : int(j[0].size());
    Mat m(p, rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || int(j[i].size()) != cols)
            throw ParseError("matrix row " + std::to_string(i) + ": ragged shape");
        for (int c = 0; c < cols; ++c)
            m(i, c) = as_residue(j[i][c], p,
                                 "matrix[" + std::to_string(i) + "][" + std::to_string(c) + "]");
    }
    return m;
}

namespace {

AlgebraPtr algebra_from_value(const Json& v, const std::string& base_dir) {
    if (v.is_string()) {
        std::filesystem::path p(v.get<std::string>());
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        return algebra_from_json(read_json_file(p.string()));
    }
    return algebra_from_json(v);
}

} // namespace

Json module_to_json(const Module& m, bool inline_algebra) {
    Json j;
    if (inline_algebra) j["algebra"] = algebra_to_json(*m.algebra());
    j["dim"] = m.dim();
    Json act = Json::array();
    for (int i = 0; i < m.algebra()->dim(); ++i) act.push_back(mat_to_json(m.action(i)));
    j["action"] = act;
    return j;
}

Module module_from_json(const Json& j, const std::string& base_dir,
                        const AlgebraPtr& inherited) {
    AlgebraPtr a = inherited;
    if (j.contains("algebra")) a = algebra_from_value(j.at("algebra"), base_dir);
    if (!a) throw ParseError("module: no algebra given or inherited");
    if (!j.contains("dim") || !j.contains("action"))
        throw ParseError("module needs keys dim and action");
    int dim = j.at("dim").get<int>();
    const Json& act = j.at("action");
    if (!act.is_array() || int(act.size()) != a->dim())
        throw ParseError("module: expected one action matrix per basis element");
    std::vector<Mat> action;
    for (int i = 0; i < a->dim(); ++i) {
        Mat m = mat_from_json(act[i], a->p());
        if (m.rows() != dim || (dim > 0 && m.cols() != dim))
            throw ParseError("action[" + std::to_string(i) + "]: expected a " +
                             std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
        if (dim == 0) m = Mat(a->p(), 0, 0);
        action.push_back(std::move(m));
    }
    try {
        return Module(a, std::move(action));
    } catch (const Error& e) {
        throw ValidationError(std::string("module invalid: ") + e.what());
    }
}

Json complex_to_json(const Complex& c, bool inline_algebra) {
    Json j;
    if (inline_algebra) j["algebra"] = algebra_to_json(*c.algebra());
    Json mods = Json::object();
    Json diffs = Json::object();
    for (int n = c.lo(); n <= c.hi(); ++n) {
        mods[std::to_string(n)] = module_to_json(c.module_at(n), false);
        if (n > c.lo()) diffs[std::to_string(n)] = mat_to_json(c.diff_at(n));
    }
    j["modules"] = mods;
    j["differentials"] = diffs;
    return j;
}

Complex complex_from_json(const Json& j, const std::string& base_dir,
                          const AlgebraPtr& inherited) {
    AlgebraPtr a = inherited;
    if (j.contains("algebra")) a = algebra_from_value(j.at("algebra"), base_dir);
    if (!j.contains("modules")) throw ParseError("complex needs key 'modules'");
    std::map<int, Module> mods;
    for (const auto& [key, value] : j.at("modules").items()) {
        int deg;
        try {
            deg = std::stoi(key);
        } catch (...) {
            throw ParseError("complex: bad degree key '" + key + "'");
        }
        Module m = module_from_json(value, base_dir, a);
        if (!a) a = m.algebra();
        mods.emplace(deg, std::move(m));
    }
    if (mods.empty()) {
        if (!a) throw ParseError("empty complex needs an algebra");
        return Complex(a);
    }
    int lo = mods.begin()->first, hi = mods.rbegin()->first;
    std::vector<Module> vec;
    for (int n = lo; n <= hi; ++n) {
        auto it = mods.find(n);
        vec.push_back(it != mods.end() ? it->second : Module::zero(a));
    }
    std::vector<Mat> diffs;
    for (int n = lo + 1; n <= hi; ++n) {
        Mat d(a->p(), vec[n - 1 - lo].dim(), vec[n - lo].dim());
        if (j.contains("differentials")) {
            const Json& dd = j.at("differentials");
            auto key = std::to_string(n);
            if (dd.contains(key)) d = mat_from_json(dd.at(key), a->p());
        }
        diffs.push_back(std::move(d));
    }
    try {
        return Complex(a, lo, std::move(vec), std::move(diffs));
    } catch (const Error& e) {
        throw ValidationError(std::string("complex invalid: ") + e.what());
    }
}

AlgebraPtr load_algebra(const std::string& path) {
    return algebra_from_json(read_json_file(path));
}

Module load_module(const std::string& path) {
    std::string dir = std::filesystem::path(path).parent_path().string();
    return module_from_json(read_json_file(path), dir);
}

Complex load_complex(const std::string& path) {
    std::string dir = std::filesystem::path(path).parent_path().string();
    return complex_from_json(read_json_file(path), dir);
}

SesFile load_ses(const std::string& path) {
    Json j = read_json_file(path);
    std::string dir = std::filesystem::path(path).parent_path().string();
    AlgebraPtr a;
    if (j.contains("algebra")) a = algebra_from_value(j.at("algebra"), dir);
    if (!j.contains("sub") || !j.contains("mid") || !j.contains("quot") ||
        !j.contains("inj") || !j.contains("surj"))
        throw ParseError("ses needs keys sub, mid, quot, inj, surj");
    Module sub = module_from_json(j.at("sub"), dir, a);
    Module mid = module_from_json(j.at("mid"), dir, a ? a : sub.algebra());
    Module quot = module_from_json(j.at("quot"), dir, a ? a : sub.algebra());
    Mat inj = mat_from_json(j.at("inj"), sub.algebra()->p());
    Mat surj = mat_from_json(j.at("surj"), sub.algebra()->p());
    try {
        ModMap mi(sub, mid, inj);
        ModMap ms(mid, quot, surj);
        return SesFile{sub, mid, quot, mi, ms};
    } catch (const Error& e) {
        throw ValidationError(std::string("ses maps invalid: ") + e.what());
    }
}

Complex LoadedObject::as_complex() const {
    if (kind == ComplexKind) return *complex;
    if (kind == ModuleKind) return Complex::concentrated(*module, 0);
    throw ParseError("an algebra cannot be used as a complex");
}

LoadedObject load_object(const std::string& path) {
    Json j = read_json_file(path);
    std::string dir = std::filesystem::path(path).parent_path().string();
    LoadedObject out{LoadedObject::AlgebraKind, nullptr, std::nullopt, std::nullopt};
    if (j.contains("modules")) {
        out.kind = LoadedObject::ComplexKind;
        out.complex = complex_from_json(j, dir);
        out.algebra = out.complex->algebra();
    } else if (j.contains("action")) {
        out.kind = LoadedObject::ModuleKind;
        out.module = module_from_json(j, dir);
        out.algebra = out.module->algebra();
    } else {
        out.kind = LoadedObject::AlgebraKind;
        out.algebra = algebra_from_json(j);
    }
    return out;
}

std::string table_tsv(const CohomTable& t) {
    std::ostringstream os;
    for (int n = t.lo; n <= t.hi; ++n)
        os << n << "\t" << t.dim_at(n) << "\n";
    return os.str();
}

std::string table_json(const CohomTable& t) {
    Json j;
    j["kind"] = t.kind == CohomTable::Ext ? "ext"
                : t.kind == CohomTable::Tate ? "tate" : "relative";
    j["window"] = {t.lo, t.hi};
    Json dims = Json::object();
    for (int n = t.lo; n <= t.hi; ++n) dims[std::to_string(n)] = t.dim_at(n);
    j["dims"] = dims;
    return j.dump(2) + "\n";
}

} // namespace homcx
