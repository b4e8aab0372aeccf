#include <algorithm>
#include <functional>

#include "dabim/dastruct.hpp"

namespace dabim {

std::optional<std::pair<int, int>> choose_cancellation(const DABimodule& M) {
    std::optional<std::pair<int, int>> best;
    auto better = [&](int x, int y) {
        if (!best) return true;
        const auto& bx = M.generator(best->first);
        const auto& gx = M.generator(x);
        if (gx.hom != bx.hom) return gx.hom > bx.hom;
        if (gx.name != bx.name) return gx.name < bx.name;
        return M.generator(y).name < M.generator(best->second).name;
    };
    for (int x = 0; x < M.generator_count(); ++x) {
        auto it = M.table()[static_cast<std::size_t>(x)].find({});
        if (it == M.table()[static_cast<std::size_t>(x)].end()) continue;
        for (const auto& t : it->second)
            if (t.out.is_idempotent() && t.gen != x && better(x, t.gen)) best = std::make_pair(x, t.gen);
    }
    return best;
}

Reduction cancel_arrow(const BimodulePtr& Mp, int x0, int y0, const ReduceOptions& opt) {
    const auto& M = *Mp;
    const auto& O = *M.out_algebra();
    {
        auto d = M.delta(x0, {});
        OutTerm unit{Path::idempotent(M.generator(x0).left), y0};
        if (std::find(d.begin(), d.end(), unit) == d.end())
            throw std::invalid_argument(M.name() + ": no unit arrow " + M.generator(x0).name + " -> " +
                                        M.generator(y0).name);
    }
    std::optional<std::size_t> bound = opt.max_input_len;
    if (M.input_len_bound()) bound = bound ? std::min(*bound, *M.input_len_bound()) : *M.input_len_bound();
    if (M.has_families() && !bound) throw std::invalid_argument(M.name() + ": reduction of families needs a bound");

    // delta with the cancelled arrow removed
    std::vector<std::vector<ConcreteArrow>> arrows(static_cast<std::size_t>(M.generator_count()));
    for (int x = 0; x < M.generator_count(); ++x) {
        auto a = M.arrows_from(x, bound);
        bool removed = false;
        for (auto& ar : a) {
            if (!removed && x == x0 && ar.to == y0 && ar.in.empty() && ar.out.is_idempotent()) {
                removed = true;
                continue;
            }
            arrows[static_cast<std::size_t>(x)].push_back(std::move(ar));
        }
    }

    auto Z = std::make_shared<DABimodule>(M.name(), M.out_algebra(), M.in_algebra(), M.out_hom(), M.in_hom());
    std::vector<int> to_z(static_cast<std::size_t>(M.generator_count()), -1);
    std::vector<int> from_z;
    for (int x = 0; x < M.generator_count(); ++x) {
        if (x == x0 || x == y0) continue;
        to_z[static_cast<std::size_t>(x)] = Z->add_generator(M.generator(x));
        from_z.push_back(x);
    }
    if (bound && (M.has_families() || M.input_len_bound())) Z->set_input_len_bound(bound);

    using Emit = std::function<void(int, const Path&, const std::vector<Path>&)>;
    // Follow delta-tilde from w; each visit of y0 continues at x0 via the homotopy.
    std::function<void(int, const Path&, const std::vector<Path>&, std::size_t, const Emit&, const Emit&)> zigzag =
        [&](int w, const Path& acc, const std::vector<Path>& acc_in, std::size_t depth, const Emit& land_z,
            const Emit& land_y0) {
            for (const auto& a : arrows[static_cast<std::size_t>(w)]) {
                if (a.to == x0) continue;
                std::vector<Path> in = acc_in;
                in.insert(in.end(), a.in.begin(), a.in.end());
                for (const auto& t : O.multiply(acc, a.out)) {
                    if (a.to == y0) {
                        land_y0(x0, t, in);
                        if (depth + 1 > opt.depth_limit)
                            throw std::runtime_error(M.name() + ": reduction exceeded the depth limit");
                        zigzag(x0, t, in, depth + 1, land_z, land_y0);
                    } else {
                        land_z(a.to, t, in);
                    }
                }
            }
        };
    const Emit none = [](int, const Path&, const std::vector<Path>&) {};

    for (int z : from_z) {
        int zi = to_z[static_cast<std::size_t>(z)];
        zigzag(z, Path::idempotent(M.generator(z).left), {}, 0,
               [&](int t, const Path& p, const std::vector<Path>& in) { Z->add_arrow(zi, to_z[static_cast<std::size_t>(t)], p, in); },
               none);
    }
    Reduction red;
    red.reduced = Z;
    red.cancelled.emplace_back(M.generator(x0).name, M.generator(y0).name);
    if (!opt.witnesses || M.has_families()) return red;

    DAMorphism f("f", Z, Mp, 0), g("g", Mp, Z, 0), T("T", Mp, Mp, 1);
    for (int z : from_z) {
        int zi = to_z[static_cast<std::size_t>(z)];
        f.add(zi, z, Path::idempotent(M.generator(z).left), {});
        zigzag(z, Path::idempotent(M.generator(z).left), {}, 0, none,
               [&](int t, const Path& p, const std::vector<Path>& in) { f.add(zi, t, p, in); });
        g.add(z, zi, Path::idempotent(M.generator(z).left), {});
    }
    const Path e0 = Path::idempotent(M.generator(y0).left);
    zigzag(x0, e0, {}, 1,
           [&](int t, const Path& p, const std::vector<Path>& in) { g.add(y0, to_z[static_cast<std::size_t>(t)], p, in); },
           none);
    T.add(y0, x0, e0, {});
    zigzag(x0, e0, {}, 1, none, [&](int t, const Path& p, const std::vector<Path>& in) { T.add(y0, t, p, in); });
    red.include = std::move(f);
    red.project = std::move(g);
    red.homotopy = std::move(T);
    return red;
}

Reduction reduce(const BimodulePtr& M, const ReduceOptions& opt) {
    Reduction total;
    total.reduced = M;
    std::size_t count = 0;
    bool tracking = opt.witnesses;
    while (true) {
        if (opt.max_cancellations && count >= *opt.max_cancellations) break;
        auto pick = choose_cancellation(*total.reduced);
        if (!pick) break;
        Reduction step = cancel_arrow(total.reduced, pick->first, pick->second, opt);
        ++count;
        total.cancelled.insert(total.cancelled.end(), step.cancelled.begin(), step.cancelled.end());
        if (tracking && !step.include) tracking = false;
        if (tracking) {
            if (!total.include) {
                total.include = std::move(step.include);
                total.project = std::move(step.project);
                total.homotopy = std::move(step.homotopy);
            } else {
                // T = T_old + f_old T_step g_old
                DAMorphism extra = compose(*total.include, compose(*step.homotopy, *total.project));
                total.homotopy = *total.homotopy + extra;
                total.include = compose(*total.include, *step.include);
                total.project = compose(*step.project, *total.project);
            }
        } else {
            total.include.reset();
            total.project.reset();
            total.homotopy.reset();
        }
        total.reduced = step.reduced;
    }
    if (total.include) {
        total.include->set_name("f");
        total.project->set_name("g");
        total.homotopy->set_name("T");
    }
    return total;
}

}  // namespace dabim
