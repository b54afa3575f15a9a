#include "lpnet/model_io.hpp"

#include <fstream>

namespace lpnet
{

using nlohmann::json;

namespace
{

const json& field(const json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object() || !j.contains(key))
    {
        throw ValidationError(path + "." + key + ": missing");
    }
    return j.at(key);
}

double real_from(const json& j, const std::string& path)
{
    if (!j.is_number())
    {
        throw ValidationError(path + ": expected a number");
    }
    return j.get<double>();
}

int int_from(const json& j, const std::string& path)
{
    if (!j.is_number_integer())
    {
        throw ValidationError(path + ": expected an integer");
    }
    return j.get<int>();
}

cplx complex_from(const json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    {
        throw ValidationError(path + ": expected [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

CVector vector_from(const json& j, const std::string& path)
{
    if (!j.is_array())
    {
        throw ValidationError(path + ": expected an array of [re, im] pairs");
    }
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
    {
        v(static_cast<Eigen::Index>(i)) = complex_from(j[i], path + "[" + std::to_string(i) + "]");
    }
    return v;
}

Rect rect_from(const json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != 4)
    {
        throw ValidationError(path + ": expected [a, b, c, d]");
    }
    Rect r{real_from(j[0], path + "[0]"), real_from(j[1], path + "[1]"),
           real_from(j[2], path + "[2]"), real_from(j[3], path + "[3]")};
    try
    {
        validate(r);
    }
    catch (const ValidationError& e)
    {
        throw ValidationError(path + ": " + e.what());
    }
    return r;
}

json rect_to_json(const Rect& r)
{
    return json::array({r.a, r.b, r.c, r.d});
}

json config_to_json(const FitConfig& c)
{
    return json{{"n", c.n},
                {"rho", c.rho},
                {"n1_plus", c.n1_plus},
                {"m1_plus", c.m1_plus},
                {"n1_minus", c.n1_minus},
                {"m1_minus", c.m1_minus},
                {"tol", c.tol},
                {"rect", rect_to_json(c.rect)},
                {"seed", c.seed},
                {"phi", c.phi},
                {"z0", complex_to_json(c.z0)},
                {"shared_activation", c.shared_activation},
                {"activation_samples", c.activation_samples},
                {"fit_points", c.fit_points},
                {"normalize_q0", c.normalize_q0}};
}

FitConfig config_from_json(const json& j, const std::string& path)
{
    FitConfig c;
    if (!j.is_object())
    {
        throw ValidationError(path + ": expected an object");
    }
    auto opt_int = [&](const char* key, int& out) {
        if (j.contains(key))
        {
            out = int_from(j.at(key), path + "." + key);
        }
    };
    auto opt_real = [&](const char* key, double& out) {
        if (j.contains(key))
        {
            out = real_from(j.at(key), path + "." + key);
        }
    };
    opt_int("n", c.n);
    opt_real("rho", c.rho);
    opt_int("n1_plus", c.n1_plus);
    opt_int("m1_plus", c.m1_plus);
    opt_int("n1_minus", c.n1_minus);
    opt_int("m1_minus", c.m1_minus);
    opt_real("tol", c.tol);
    opt_int("activation_samples", c.activation_samples);
    opt_int("fit_points", c.fit_points);
    if (j.contains("rect"))
    {
        c.rect = rect_from(j.at("rect"), path + ".rect");
    }
    if (j.contains("seed"))
    {
        if (!j.at("seed").is_number_unsigned())
        {
            throw ValidationError(path + ".seed: expected a nonnegative integer");
        }
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("phi"))
    {
        if (!j.at("phi").is_string())
        {
            throw ValidationError(path + ".phi: expected a string");
        }
        c.phi = j.at("phi").get<std::string>();
    }
    if (j.contains("z0"))
    {
        c.z0 = complex_from(j.at("z0"), path + ".z0");
    }
    if (j.contains("shared_activation"))
    {
        c.shared_activation = j.at("shared_activation").get<bool>();
    }
    if (j.contains("normalize_q0"))
    {
        c.normalize_q0 = j.at("normalize_q0").get<bool>();
    }
    return c;
}

} // namespace

json complex_to_json(cplx z)
{
    return json::array({z.real(), z.imag()});
}

json vector_to_json(const CVector& v)
{
    json out = json::array();
    for (const cplx& z : v)
    {
        out.push_back(complex_to_json(z));
    }
    return out;
}

json to_json(const NetworkComponent& comp)
{
    json trims = json::array();
    for (const TrimRecord& t : comp.degrees.trim_log)
    {
        trims.push_back({{"stage", t.stage}, {"lambda", t.lambda}});
    }
    return json{{"sign", to_string(comp.sign)},
                {"N", comp.degrees.n_deg},
                {"M", comp.degrees.m_deg},
                {"alpha", vector_to_json(comp.activation.alpha)},
                {"gamma", json::array({complex_to_json(comp.activation.gamma0),
                                       complex_to_json(comp.activation.gamma1)})},
                {"w1", vector_to_json(comp.w1)},
                {"b1", vector_to_json(comp.b1)},
                {"w2", vector_to_json(comp.w2)},
                {"b2", complex_to_json(comp.b2)},
                {"p", vector_to_json(comp.degrees.p)},
                {"q", vector_to_json(comp.degrees.q)},
                {"C0", vector_to_json(comp.factors.c0)},
                {"C1", vector_to_json(comp.factors.c1)},
                {"roots", vector_to_json(comp.factors.roots)},
                {"rect", rect_to_json(comp.factors.rect)},
                {"ls_residual", comp.ls_residual},
                {"ls_relative_residual", comp.ls_relative_residual},
                {"seed", comp.factors.seed},
                {"tau", comp.degrees.tau},
                {"svd_iterations", comp.degrees.svd_iterations},
                {"m_trace", comp.degrees.m_trace},
                {"trim_log", trims},
                {"relation_residual", comp.degrees.relation_residual},
                {"flags",
                 {{"n_clamped", comp.degrees.n_clamped},
                  {"relation_warning", comp.degrees.relation_warning},
                  {"representation_warning", comp.representation_warning},
                  {"rank_deficient", comp.rank_deficient},
                  {"padded", comp.padded}}}};
}

NetworkComponent component_from_json(const json& j, const std::string& path)
{
    if (!j.is_object())
    {
        throw ValidationError(path + ": expected an object");
    }
    NetworkComponent comp;
    const json& sign = field(j, "sign", path);
    if (!sign.is_string())
    {
        throw ValidationError(path + ".sign: expected a string");
    }
    try
    {
        comp.sign = sign_from_string(sign.get<std::string>());
    }
    catch (const ValidationError& e)
    {
        throw ValidationError(path + "." + e.what());
    }
    comp.degrees.n_deg = int_from(field(j, "N", path), path + ".N");
    comp.degrees.m_deg = int_from(field(j, "M", path), path + ".M");
    comp.activation.alpha = vector_from(field(j, "alpha", path), path + ".alpha");
    const CVector gamma = vector_from(field(j, "gamma", path), path + ".gamma");
    if (gamma.size() != 2)
    {
        throw ValidationError(path + ".gamma: expected 2 entries, got " +
                              std::to_string(gamma.size()));
    }
    comp.activation.gamma0 = gamma(0);
    comp.activation.gamma1 = gamma(1);
    comp.w1 = vector_from(field(j, "w1", path), path + ".w1");
    comp.b1 = vector_from(field(j, "b1", path), path + ".b1");
    comp.w2 = vector_from(field(j, "w2", path), path + ".w2");
    comp.b2 = complex_from(field(j, "b2", path), path + ".b2");
    comp.degrees.p = vector_from(field(j, "p", path), path + ".p");
    comp.degrees.q = vector_from(field(j, "q", path), path + ".q");
    comp.factors.c0 = vector_from(field(j, "C0", path), path + ".C0");
    comp.factors.c1 = vector_from(field(j, "C1", path), path + ".C1");
    comp.ls_residual = real_from(field(j, "ls_residual", path), path + ".ls_residual");
    const json& seed = field(j, "seed", path);
    if (!seed.is_number_unsigned())
    {
        throw ValidationError(path + ".seed: expected a nonnegative integer");
    }
    comp.factors.seed = seed.get<std::uint64_t>();

    if (j.contains("roots"))
    {
        comp.factors.roots = vector_from(j.at("roots"), path + ".roots");
    }
    if (j.contains("rect"))
    {
        comp.factors.rect = rect_from(j.at("rect"), path + ".rect");
    }
    comp.ls_relative_residual = j.contains("ls_relative_residual")
                                    ? real_from(j.at("ls_relative_residual"),
                                                path + ".ls_relative_residual")
                                    : 1.0;
    if (j.contains("tau"))
    {
        comp.degrees.tau = real_from(j.at("tau"), path + ".tau");
    }
    if (j.contains("svd_iterations"))
    {
        comp.degrees.svd_iterations = int_from(j.at("svd_iterations"), path + ".svd_iterations");
    }
    if (j.contains("m_trace"))
    {
        comp.degrees.m_trace = j.at("m_trace").get<std::vector<int>>();
    }
    if (j.contains("trim_log"))
    {
        for (const json& t : j.at("trim_log"))
        {
            comp.degrees.trim_log.push_back(
                {t.at("stage").get<std::string>(), t.at("lambda").get<int>()});
        }
    }
    if (j.contains("relation_residual"))
    {
        comp.degrees.relation_residual =
            real_from(j.at("relation_residual"), path + ".relation_residual");
    }
    if (j.contains("flags"))
    {
        const json& f = j.at("flags");
        comp.degrees.n_clamped = f.value("n_clamped", false);
        comp.degrees.relation_warning = f.value("relation_warning", false);
        comp.representation_warning = f.value("representation_warning", false);
        comp.rank_deficient = f.value("rank_deficient", false);
        comp.padded = f.value("padded", false);
    }

    try
    {
        validate(comp);
    }
    catch (const ValidationError& e)
    {
        throw ValidationError(path + "." + e.what());
    }
    return comp;
}

json to_json(const Model& m)
{
    json poles = json::array();
    for (const PoleEstimate& e : m.pole_report)
    {
        poles.push_back({{"sign", to_string(e.component_sign)},
                         {"neuron", e.neuron_index},
                         {"location", e.at_infinity ? json(nullptr) : complex_to_json(e.location)}});
    }
    return json{{"plus", m.plus ? to_json(*m.plus) : json(nullptr)},
                {"minus", m.minus ? to_json(*m.minus) : json(nullptr)},
                {"meta",
                 {{"config", config_to_json(m.config)},
                  {"poles", poles},
                  {"remainder",
                   {{"sign", to_string(m.remainder_sign)}, {"coeffs", vector_to_json(m.remainder)}}}}}};
}

Model model_from_json(const json& j)
{
    if (!j.is_object())
    {
        throw ValidationError("model: expected a JSON object");
    }
    Model m;
    if (j.contains("plus") && !j.at("plus").is_null())
    {
        m.plus = component_from_json(j.at("plus"), "plus");
        if (m.plus->sign != Sign::plus)
        {
            throw ValidationError("plus.sign: expected \"+\"");
        }
    }
    if (j.contains("minus") && !j.at("minus").is_null())
    {
        m.minus = component_from_json(j.at("minus"), "minus");
        if (m.minus->sign != Sign::minus)
        {
            throw ValidationError("minus.sign: expected \"-\"");
        }
    }
    if (!m.plus && !m.minus)
    {
        throw ValidationError("model: neither plus nor minus component present");
    }
    if (j.contains("meta") && j.at("meta").contains("config"))
    {
        m.config = config_from_json(j.at("meta").at("config"), "meta.config");
    }
    if (j.contains("meta") && j.at("meta").contains("remainder"))
    {
        const json& r = j.at("meta").at("remainder");
        const json& sign = field(r, "sign", "meta.remainder");
        if (!sign.is_string())
        {
            throw ValidationError("meta.remainder.sign: expected a string");
        }
        m.remainder_sign = sign_from_string(sign.get<std::string>());
        m.remainder = vector_from(field(r, "coeffs", "meta.remainder"), "meta.remainder.coeffs");
    }
    for (const NetworkComponent* comp : {m.plus_ptr(), m.minus_ptr()})
    {
        if (comp != nullptr)
        {
            const std::vector<PoleEstimate> poles = recover_poles(*comp);
            m.pole_report.insert(m.pole_report.end(), poles.begin(), poles.end());
        }
    }
    return m;
}

void write_json(const json& j, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
    {
        throw ValidationError("cannot open '" + path + "' for writing");
    }
    out << j.dump(2) << '\n';
    if (!out)
    {
        throw ValidationError("failed writing '" + path + "'");
    }
}

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ValidationError("cannot open '" + path + "'");
    }
    try
    {
        return json::parse(in);
    }
    catch (const json::parse_error& e)
    {
        throw ValidationError(path + ": malformed JSON: " + e.what());
    }
}

void save_model(const Model& m, const std::string& path)
{
    write_json(to_json(m), path);
}

Model load_model(const std::string& path)
{
    try
    {
        return model_from_json(read_json(path));
    }
    catch (const json::exception& e)
    {
        throw ValidationError(path + ": " + e.what());
    }
}

json to_json(const ContourSamples& s)
{
    return json{{"rho", s.rho}, {"values", vector_to_json(s.values)}};
}

ContourSamples samples_from_json(const json& j)
{
    ContourSamples s;
    s.rho = real_from(field(j, "rho", "samples"), "samples.rho");
    s.values = vector_from(field(j, "values", "samples"), "samples.values");
    validate(s);
    return s;
}

ContourSamples load_samples(const std::string& path)
{
    return samples_from_json(read_json(path));
}

void save_samples(const ContourSamples& s, const std::string& path)
{
    write_json(to_json(s), path);
}

json to_json(const LaurentWindow& w)
{
    json coeffs = json::array();
    for (int k = -w.n; k <= w.n; ++k)
    {
        const cplx c = w.at(k);
        coeffs.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}});
    }
    return json{{"n", w.n}, {"rho", w.rho}, {"coeffs", coeffs}};
}

} // namespace lpnet
