#include "fracblowup/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fracblowup/errors.hpp"

namespace fracblowup {

double boundary_distance(const Domain& domain, double x) {
    (void)domain;
    return std::abs(1.0 - std::abs(x));
}

double GradedMesh::min_delta() const {
    double m = delta[0];
    for (double d : delta) m = std::min(m, d);
    return m;
}

std::vector<int> GradedMesh::strip_indices(double delta0) const {
    std::vector<int> idx;
    for (int i = 0; i < (int)nodes.size(); ++i)
        if (delta[i] < delta0) idx.push_back(i);
    return idx;
}

GradedMesh build_graded_mesh(const Domain& domain, int n, double q) {
    if (n < 16) throw DataError("mesh needs n >= 16 nodes");
    if (q < 1.0) throw DataError("grading exponent q must be >= 1");
    GradedMesh m;
    m.domain = domain;
    m.n = n;
    m.q = q;
    m.nodes.resize(n);
    m.delta.resize(n);
    if (domain.kind == DomainKind::Interval) {
        // delta is uniform in delta^{1/q} on each half; symmetric about 0
        for (int j = 1; j <= n; ++j) {
            double t = (double)j / (n + 1);
            double d, x;
            if (2 * t <= 1.0) {
                d = std::pow(2.0 * t, q);
                x = -1.0 + d;
            } else {
                d = std::pow(2.0 * (1.0 - t), q);
                x = 1.0 - d;
            }
            m.nodes[j - 1] = x;
            m.delta[j - 1] = d;
        }
    } else {
        // radii clustered toward r = 1
        for (int j = 1; j <= n; ++j) {
            double t = (double)j / (n + 1);
            double d = std::pow(1.0 - t, q);
            m.nodes[j - 1] = 1.0 - d;
            m.delta[j - 1] = d;
        }
    }
    for (size_t i = 1; i < m.nodes.size(); ++i)
        if (!(m.nodes[i] > m.nodes[i - 1]))
            throw DataError("graded mesh nodes not strictly increasing");
    return m;
}

std::vector<double> GridFunction::totals() const {
    std::vector<double> t(values.size());
    for (size_t i = 0; i < values.size(); ++i) t[i] = total_at((int)i);
    return t;
}

double GridFunction::exterior_value(double dist) const {
    if (dist <= 0.0) throw DataError("exterior_value needs dist > 0");
    if (std::holds_alternative<ZeroExterior>(exterior)) return 0.0;
    if (const auto* cf = std::get_if<ClosedFormExterior>(&exterior))
        return cf->value_of_dist(dist);
    const auto& tab = std::get<TabulatedExterior>(exterior);
    if (dist <= tab.dist.front()) return tab.value.front();
    if (dist >= tab.dist.back()) {
        double v = tab.value.back();
        return v * std::pow(dist / tab.dist.back(), -tab.decay_exponent);
    }
    auto it = std::upper_bound(tab.dist.begin(), tab.dist.end(), dist);
    int i = (int)(it - tab.dist.begin()) - 1;
    double t = (std::log(dist) - std::log(tab.dist[i])) /
               (std::log(tab.dist[i + 1]) - std::log(tab.dist[i]));
    // linear in log-dist; values may vanish so stay linear in value
    return tab.value[i] + t * (tab.value[i + 1] - tab.value[i]);
}

GridFunction make_grid_function(std::shared_ptr<const GradedMesh> mesh,
                                std::vector<double> values, Exterior exterior) {
    if ((int)values.size() != mesh->n)
        throw DataError("grid function values do not match mesh size");
    GridFunction gf;
    gf.mesh = std::move(mesh);
    gf.values = std::move(values);
    gf.exterior = std::move(exterior);
    return gf;
}

namespace {
std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace

void write_grid_function_csv(const GridFunction& gf, const std::string& path,
                             double s, int dim) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    const GradedMesh& m = *gf.mesh;
    out << "# fracblowup solution s=" << fmt17(s) << " N=" << dim
        << " trace_coeff=" << fmt17(gf.trace_coeff.value_or(0.0)) << " kind="
        << (m.domain.kind == DomainKind::Interval ? "interval" : "ball")
        << " q=" << fmt17(m.q) << "\n";
    out << "x,delta,value,singular_part,total\n";
    for (int i = 0; i < m.n; ++i) {
        double sing = gf.trace_coeff ? *gf.trace_coeff * gf.singular_profile[i] : 0.0;
        out << fmt17(m.nodes[i]) << ',' << fmt17(m.delta[i]) << ','
            << fmt17(gf.values[i]) << ',' << fmt17(sing) << ','
            << fmt17(gf.total_at(i)) << "\n";
    }
}

LoadedGridFunction read_grid_function_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::string header;
    std::getline(in, header);
    LoadedGridFunction out;
    double trace = 0.0;
    double q = 2.0;
    std::string kind = "interval";
    {
        std::istringstream hs(header);
        std::string tok;
        while (hs >> tok) {
            auto eat = [&](const std::string& key, auto& dst) {
                if (tok.rfind(key, 0) == 0) {
                    std::istringstream vs(tok.substr(key.size()));
                    vs >> dst;
                    return true;
                }
                return false;
            };
            eat("s=", out.s) || eat("N=", out.dim) || eat("trace_coeff=", trace) ||
                eat("kind=", kind) || eat("q=", q);
        }
    }
    std::string line;
    std::getline(in, line);  // column names
    std::vector<double> xs, deltas, values, sing, totals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        double col[5];
        char comma;
        ls >> col[0] >> comma >> col[1] >> comma >> col[2] >> comma >> col[3] >>
            comma >> col[4];
        xs.push_back(col[0]);
        deltas.push_back(col[1]);
        values.push_back(col[2]);
        sing.push_back(col[3]);
        totals.push_back(col[4]);
    }
    if (xs.size() < 16) throw DataError("solution CSV too short: " + path);
    auto mesh = std::make_shared<GradedMesh>();
    mesh->domain =
        kind == "ball" ? Domain{DomainKind::RadialBall, out.dim} : Domain{};
    mesh->n = (int)xs.size();
    mesh->q = q;
    mesh->nodes = xs;
    mesh->delta = deltas;
    out.gf.mesh = mesh;
    out.gf.values = values;
    if (trace != 0.0) {
        out.gf.trace_coeff = trace;
        out.gf.singular_profile.resize(xs.size());
        for (size_t i = 0; i < xs.size(); ++i)
            out.gf.singular_profile[i] = sing[i] / trace;
    }
    return out;
}

}  // namespace fracblowup
