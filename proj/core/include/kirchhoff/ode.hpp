#pragma once
#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "kirchhoff/real.hpp"

namespace kirchhoff {

struct IntegratorStats {
    long n_accepted = 0;
    long n_rejected = 0;
    long n_rhs = 0;
    bool step_underflow = false;
};

/// Time-stamped samples of a flattened state vector, row-major.
struct Trajectory {
    int dim = 0;
    std::vector<double> t;
    std::vector<double> y;
    IntegratorStats stats;

    std::size_t size() const { return t.size(); }
    const double* row(std::size_t i) const { return y.data() + dim * i; }
    void push(double ti, const double* yi) {
        t.push_back(ti);
        y.insert(y.end(), yi, yi + dim);
    }
};

/// Adaptive eighth-order Dormand–Prince pair (the DOP853 scheme of Hairer,
/// Nørsett and Wanner) with the 5th/3rd-order combined error estimate and
/// the seventh-order dense output. One accepted step at a time; the caller
/// drives the loop and may interrogate the dense interpolant of the last
/// accepted step (used for sampling and for section-event refinement).
template <class Real, std::size_t N, class RHS>
class Dop853 {
public:
    using State = std::array<Real, N>;

    struct Options {
        Real rtol = Real(1e-12);
        Real atol = Real(1e-12);
        Real h_max = Real(0);    // 0: no cap beyond the remaining interval
        long max_steps = 200000000L;
        bool dense = false;      // prepare dense-output coefficients per step
    };

    Dop853(RHS rhs, Real t0, const State& y0, Options opt)
        : f_(rhs), opt_(opt), t_(t0), y_(y0) {
        f_(t_, y_, k1_);
        stats_.n_rhs++;
        h_ = Real(0);
    }

    Real t() const { return t_; }
    Real t_prev() const { return t_prev_; }
    const State& y() const { return y_; }
    const State& y_prev() const { return y_prev_; }
    const IntegratorStats& stats() const { return stats_; }
    Real last_h() const { return t_ - t_prev_; }

    /// Advance one accepted step, never stepping past t_end.
    /// Returns false if the integration cannot continue (step underflow
    /// or step budget exhausted); true otherwise. When t() == t_end the
    /// caller should stop.
    bool step(Real t_end) {
        using namespace rmath;
        const Real uround = eps_of<Real>();
        const Real safe = Real(0.9), fac1 = Real(1) / Real(3), fac2 = Real(6);
        const Real expo1 = Real(1) / Real(8);
        const Real posneg = (t_end >= t_) ? Real(1) : Real(-1);

        Real hmax = r_abs(t_end - t_);
        if (opt_.h_max > Real(0)) hmax = r_min(hmax, opt_.h_max);
        if (h_ == Real(0)) h_ = initial_step(hmax, posneg);

        bool reject = false;
        while (true) {
            if (stats_.n_accepted + stats_.n_rejected > opt_.max_steps)
                return false;
            if (Real(0.1) * r_abs(h_) <= r_abs(t_) * uround) {
                stats_.step_underflow = true;
                return false;
            }
            bool last = false;
            if ((t_ + Real(1.01) * h_ - t_end) * posneg > Real(0)) {
                h_ = t_end - t_;
                last = true;
            }
            State ynew;
            twelve_stages(ynew);
            const Real err = error_norm(ynew);

            const Real fac11 = r_pow(err, expo1);
            Real fac = fac11 / r_pow(facold_, Real(0.0));
            fac = r_max(Real(1) / fac2, r_min(Real(1) / fac1, fac / safe));
            Real hnew = h_ / fac;

            if (err <= Real(1)) {
                facold_ = r_max(err, Real(1e-4));
                stats_.n_accepted++;
                f_(t_ + h_, ynew, k4_);
                stats_.n_rhs++;
                if (opt_.dense) prepare_dense(ynew);
                y_prev_ = y_;
                t_prev_ = t_;
                k1_ = k4_;
                y_ = ynew;
                t_ = last ? t_end : t_ + h_;
                if (r_abs(hnew) > hmax) hnew = posneg * hmax;
                if (reject) hnew = posneg * r_min(r_abs(hnew), r_abs(h_));
                h_last_ = h_;
                h_ = hnew;
                return true;
            }
            hnew = h_ / r_min(Real(1) / fac1, fac11 / safe);
            reject = true;
            if (stats_.n_accepted >= 1) stats_.n_rejected++;
            h_ = hnew;
        }
    }

    /// Dense interpolation inside the last accepted step (requires
    /// Options::dense). Valid for t in [t_prev(), t()].
    State dense(Real ti) const {
        const Real s = (ti - t_prev_) / h_last_;
        const Real s1 = Real(1) - s;
        State out;
        for (std::size_t i = 0; i < N; i++)
            out[i] = rc1_[i] + s * (rc2_[i] + s1 * (rc3_[i] + s * (rc4_[i] +
                     s1 * (rc5_[i] + s * (rc6_[i] + s1 * (rc7_[i] + s * rc8_[i]))))));
        return out;
    }

private:
    RHS f_;
    Options opt_;
    Real t_{}, t_prev_{}, h_{}, h_last_{};
    Real facold_ = Real(1e-4);
    State y_{}, y_prev_{};
    State k1_{}, k2_{}, k3_{}, k4_{}, k5_{}, k6_{}, k7_{}, k8_{}, k9_{}, k10_{}, ytmp_{};
    State rc1_{}, rc2_{}, rc3_{}, rc4_{}, rc5_{}, rc6_{}, rc7_{}, rc8_{};
    IntegratorStats stats_;

    // Tableau of DOP853 (Hairer, Nørsett, Wanner, "Solving ODEs I").
    static constexpr double c2 = 0.526001519587677318785587544488E-01,
        c3 = 0.789002279381515978178381316732E-01,
        c4 = 0.118350341907227396726757197510E+00,
        c5 = 0.281649658092772603273242802490E+00,
        c6 = 0.333333333333333333333333333333E+00,
        c7 = 0.25E+00,
        c8 = 0.307692307692307692307692307692E+00,
        c9 = 0.651282051282051282051282051282E+00,
        c10 = 0.6E+00,
        c11 = 0.857142857142857142857142857142E+00,
        b1 = 5.42937341165687622380535766363E-2,
        b6 = 4.45031289275240888144113950566E0,
        b7 = 1.89151789931450038304281599044E0,
        b8 = -5.8012039600105847814672114227E0,
        b9 = 3.1116436695781989440891606237E-1,
        b10 = -1.52160949662516078556178806805E-1,
        b11 = 2.01365400804030348374776537501E-1,
        b12 = 4.47106157277725905176885569043E-2,
        a21 = 5.26001519587677318785587544488E-2,
        a31 = 1.97250569845378994544595329183E-2,
        a32 = 5.91751709536136983633785987549E-2,
        a41 = 2.95875854768068491816892993775E-2,
        a43 = 8.87627564304205475450678981324E-2,
        a51 = 2.41365134159266685502369798665E-1,
        a53 = -8.84549479328286085344864962717E-1,
        a54 = 9.24834003261792003115737966543E-1,
        a61 = 3.7037037037037037037037037037E-2,
        a64 = 1.70828608729473871279604482173E-1,
        a65 = 1.25467687566822425016691814123E-1,
        a71 = 3.7109375E-2,
        a74 = 1.70252211019544039314978060272E-1,
        a75 = 6.02165389804559606850219397283E-2,
        a76 = -1.7578125E-2,
        a81 = 3.70920001185047927108779319836E-2,
        a84 = 1.70383925712239993810214054705E-1,
        a85 = 1.07262030446373284651809199168E-1,
        a86 = -1.53194377486244017527936158236E-2,
        a87 = 8.27378916381402288758473766002E-3,
        a91 = 6.24110958716075717114429577812E-1,
        a94 = -3.36089262944694129406857109825E0,
        a95 = -8.68219346841726006818189891453E-1,
        a96 = 2.75920996994467083049415600797E1,
        a97 = 2.01540675504778934086186788979E1,
        a98 = -4.34898841810699588477366255144E1,
        a101 = 4.77662536438264365890433908527E-1,
        a104 = -2.48811461997166764192642586468E0,
        a105 = -5.90290826836842996371446475743E-1,
        a106 = 2.12300514481811942347288949897E1,
        a107 = 1.52792336328824235832596922938E1,
        a108 = -3.32882109689848629194453265587E1,
        a109 = -2.03312017085086261358222928593E-2,
        a111 = -9.3714243008598732571704021658E-1,
        a114 = 5.18637242884406370830023853209E0,
        a115 = 1.09143734899672957818500254654E0,
        a116 = -8.14978701074692612513997267357E0,
        a117 = -1.85200656599969598641566180701E1,
        a118 = 2.27394870993505042818970056734E1,
        a119 = 2.49360555267965238987089396762E0,
        a1110 = -3.0467644718982195003823669022E0,
        a121 = 2.27331014751653820792359768449E0,
        a124 = -1.05344954667372501984066689879E1,
        a125 = -2.00087205822486249909675718444E0,
        a126 = -1.79589318631187989172765950534E1,
        a127 = 2.79488845294199600508499808837E1,
        a128 = -2.85899827713502369474065508674E0,
        a129 = -8.87285693353062954433549289258E0,
        a1210 = 1.23605671757943030647266201528E1,
        a1211 = 6.43392746015763530355970484046E-1;

    static constexpr double bhh1 = 0.244094488188976377952755905512E+00,
        bhh2 = 0.733846688281611857341361741547E+00,
        bhh3 = 0.220588235294117647058823529412E-01,
        er1 = 0.1312004499419488073250102996E-01,
        er6 = -0.1225156446376204440720569753E+01,
        er7 = -0.4957589496572501915214079952E+00,
        er8 = 0.1664377182454986536961530415E+01,
        er9 = -0.3503288487499736816886487290E+00,
        er10 = 0.3341791187130174790297318841E+00,
        er11 = 0.8192320648511571246570742613E-01,
        er12 = -0.2235530786388629525884427845E-01;

    void twelve_stages(State& ynew) {
        const Real h = h_;
        auto& w = y_;
        State& yt = ytmp_;
        for (std::size_t i = 0; i < N; i++) yt[i] = w[i] + h * Real(a21) * k1_[i];
        f_(t_ + Real(c2) * h, yt, k2_);
        for (std::size_t i = 0; i < N; i++) yt[i] = w[i] + h * (Real(a31) * k1_[i] + Real(a32) * k2_[i]);
        f_(t_ + Real(c3) * h, yt, k3_);
        for (std::size_t i = 0; i < N; i++) yt[i] = w[i] + h * (Real(a41) * k1_[i] + Real(a43) * k3_[i]);
        f_(t_ + Real(c4) * h, yt, k4_);
        for (std::size_t i = 0; i < N; i++) yt[i] = w[i] + h * (Real(a51) * k1_[i] + Real(a53) * k3_[i] + Real(a54) * k4_[i]);
        f_(t_ + Real(c5) * h, yt, k5_);
        for (std::size_t i = 0; i < N; i++) yt[i] = w[i] + h * (Real(a61) * k1_[i] + Real(a64) * k4_[i] + Real(a65) * k5_[i]);
        f_(t_ + Real(c6) * h, yt, k6_);
        for (std::size_t i = 0; i < N; i++) yt[i] = w[i] + h * (Real(a71) * k1_[i] + Real(a74) * k4_[i] + Real(a75) * k5_[i] + Real(a76) * k6_[i]);
        f_(t_ + Real(c7) * h, yt, k7_);
        for (std::size_t i = 0; i < N; i++) yt[i] = w[i] + h * (Real(a81) * k1_[i] + Real(a84) * k4_[i] + Real(a85) * k5_[i] + Real(a86) * k6_[i] + Real(a87) * k7_[i]);
        f_(t_ + Real(c8) * h, yt, k8_);
        for (std::size_t i = 0; i < N; i++) yt[i] = w[i] + h * (Real(a91) * k1_[i] + Real(a94) * k4_[i] + Real(a95) * k5_[i] + Real(a96) * k6_[i] + Real(a97) * k7_[i] + Real(a98) * k8_[i]);
        f_(t_ + Real(c9) * h, yt, k9_);
        for (std::size_t i = 0; i < N; i++) yt[i] = w[i] + h * (Real(a101) * k1_[i] + Real(a104) * k4_[i] + Real(a105) * k5_[i] + Real(a106) * k6_[i] + Real(a107) * k7_[i] + Real(a108) * k8_[i] + Real(a109) * k9_[i]);
        f_(t_ + Real(c10) * h, yt, k10_);
        for (std::size_t i = 0; i < N; i++) yt[i] = w[i] + h * (Real(a111) * k1_[i] + Real(a114) * k4_[i] + Real(a115) * k5_[i] + Real(a116) * k6_[i] + Real(a117) * k7_[i] + Real(a118) * k8_[i] + Real(a119) * k9_[i] + Real(a1110) * k10_[i]);
        f_(t_ + Real(c11) * h, yt, k2_);
        for (std::size_t i = 0; i < N; i++) yt[i] = w[i] + h * (Real(a121) * k1_[i] + Real(a124) * k4_[i] + Real(a125) * k5_[i] + Real(a126) * k6_[i] + Real(a127) * k7_[i] + Real(a128) * k8_[i] + Real(a129) * k9_[i] + Real(a1210) * k10_[i] + Real(a1211) * k2_[i]);
        f_(t_ + h, yt, k3_);
        stats_.n_rhs += 11;
        for (std::size_t i = 0; i < N; i++) {
            k4_[i] = Real(b1) * k1_[i] + Real(b6) * k6_[i] + Real(b7) * k7_[i] + Real(b8) * k8_[i] + Real(b9) * k9_[i] + Real(b10) * k10_[i] + Real(b11) * k2_[i] + Real(b12) * k3_[i];
            ynew[i] = w[i] + h * k4_[i];
        }
    }

    Real error_norm(const State& ynew) const {
        using namespace rmath;
        Real err = Real(0), err2 = Real(0);
        for (std::size_t i = 0; i < N; i++) {
            const Real sk = Real(1) / (opt_.atol + opt_.rtol * r_max(r_abs(y_[i]), r_abs(ynew[i])));
            Real sqr = (k4_[i] - Real(bhh1) * k1_[i] - Real(bhh2) * k9_[i] - Real(bhh3) * k3_[i]) * sk;
            err2 += sqr * sqr;
            sqr = (Real(er1) * k1_[i] + Real(er6) * k6_[i] + Real(er7) * k7_[i] + Real(er8) * k8_[i] + Real(er9) * k9_[i] + Real(er10) * k10_[i] + Real(er11) * k2_[i] + Real(er12) * k3_[i]) * sk;
            err += sqr * sqr;
        }
        Real deno = err + Real(0.01) * err2;
        if (deno <= Real(0)) deno = Real(N);
        else deno *= Real(N);
        return r_abs(h_) * err * r_sqrt(Real(1) / deno);
    }

    void prepare_dense(const State& ynew) {
        // d-rows and extra stages 14..16 of the 7th-order interpolant.
        static constexpr double c14 = 0.1E+00, c15 = 0.2E+00,
            c16 = 0.777777777777777777777777777778E+00,
            a141 = 5.61675022830479523392909219681E-2,
            a147 = 2.53500210216624811088794765333E-1,
            a148 = -2.46239037470802489917441475441E-1,
            a149 = -1.24191423263816360469010140626E-1,
            a1410 = 1.5329179827876569731206322685E-1,
            a1411 = 8.20105229563468988491666602057E-3,
            a1412 = 7.56789766054569976138603589584E-3,
            a1413 = -8.298E-3,
            a151 = 3.18346481635021405060768473261E-2,
            a156 = 2.83009096723667755288322961402E-2,
            a157 = 5.35419883074385676223797384372E-2,
            a158 = -5.49237485713909884646569340306E-2,
            a1511 = -1.08347328697249322858509316994E-4,
            a1512 = 3.82571090835658412954920192323E-4,
            a1513 = -3.40465008687404560802977114492E-4,
            a1514 = 1.41312443674632500278074618366E-1,
            a161 = -4.28896301583791923408573538692E-1,
            a166 = -4.69762141536116384314449447206E0,
            a167 = 7.68342119606259904184240953878E0,
            a168 = 4.06898981839711007970213554331E0,
            a169 = 3.56727187455281109270669543021E-1,
            a1613 = -1.39902416515901462129418009734E-3,
            a1614 = 2.9475147891527723389556272149E0,
            a1615 = -9.15095847217987001081870187138E0,
            d41 = -0.84289382761090128651353491142E+01,
            d46 = 0.56671495351937776962531783590E+00,
            d47 = -0.30689499459498916912797304727E+01,
            d48 = 0.23846676565120698287728149680E+01,
            d49 = 0.21170345824450282767155149946E+01,
            d410 = -0.87139158377797299206789907490E+00,
            d411 = 0.22404374302607882758541771650E+01,
            d412 = 0.63157877876946881815570249290E+00,
            d413 = -0.88990336451333310820698117400E-01,
            d414 = 0.18148505520854727256656404962E+02,
            d415 = -0.91946323924783554000451984436E+01,
            d416 = -0.44360363875948939664310572000E+01,
            d51 = 0.10427508642579134603413151009E+02,
            d56 = 0.24228349177525818288430175319E+03,
            d57 = 0.16520045171727028198505394887E+03,
            d58 = -0.37454675472269020279518312152E+03,
            d59 = -0.22113666853125306036270938578E+02,
            d510 = 0.77334326684722638389603898808E+01,
            d511 = -0.30674084731089398182061213626E+02,
            d512 = -0.93321305264302278729567221706E+01,
            d513 = 0.15697238121770843886131091075E+02,
            d514 = -0.31139403219565177677282850411E+02,
            d515 = -0.93529243588444783865713862664E+01,
            d516 = 0.35816841486394083752465898540E+02,
            d61 = 0.19985053242002433820987653617E+02,
            d66 = -0.38703730874935176555105901742E+03,
            d67 = -0.18917813819516756882830838328E+03,
            d68 = 0.52780815920542364900561016686E+03,
            d69 = -0.11573902539959630126141871134E+02,
            d610 = 0.68812326946963000169666922661E+01,
            d611 = -0.10006050966910838403183860980E+01,
            d612 = 0.77771377980534432092869265740E+00,
            d613 = -0.27782057523535084065932004339E+01,
            d614 = -0.60196695231264120758267380846E+02,
            d615 = 0.84320405506677161018159903784E+02,
            d616 = 0.11992291136182789328035130030E+02,
            d71 = -0.25693933462703749003312586129E+02,
            d76 = -0.15418974869023643374053993627E+03,
            d77 = -0.23152937917604549567536039109E+03,
            d78 = 0.35763911791061412378285349910E+03,
            d79 = 0.93405324183624310003907691704E+02,
            d710 = -0.37458323136451633156875139351E+02,
            d711 = 0.10409964950896230045147246184E+03,
            d712 = 0.29840293426660503123344363579E+02,
            d713 = -0.43533456590011143754432175058E+02,
            d714 = 0.96324553959188282948394950600E+02,
            d715 = -0.39177261675615439165231486172E+02,
            d716 = -0.14972683625798562581422125276E+03;

        const Real h = h_;
        for (std::size_t i = 0; i < N; i++) {
            rc1_[i] = y_[i];
            const Real ydiff = ynew[i] - y_[i];
            rc2_[i] = ydiff;
            const Real bspl = h * k1_[i] - ydiff;
            rc3_[i] = bspl;
            rc4_[i] = ydiff - h * k4_[i] - bspl;
            rc5_[i] = Real(d41) * k1_[i] + Real(d46) * k6_[i] + Real(d47) * k7_[i] + Real(d48) * k8_[i] + Real(d49) * k9_[i] + Real(d410) * k10_[i] + Real(d411) * k2_[i] + Real(d412) * k3_[i];
            rc6_[i] = Real(d51) * k1_[i] + Real(d56) * k6_[i] + Real(d57) * k7_[i] + Real(d58) * k8_[i] + Real(d59) * k9_[i] + Real(d510) * k10_[i] + Real(d511) * k2_[i] + Real(d512) * k3_[i];
            rc7_[i] = Real(d61) * k1_[i] + Real(d66) * k6_[i] + Real(d67) * k7_[i] + Real(d68) * k8_[i] + Real(d69) * k9_[i] + Real(d610) * k10_[i] + Real(d611) * k2_[i] + Real(d612) * k3_[i];
            rc8_[i] = Real(d71) * k1_[i] + Real(d76) * k6_[i] + Real(d77) * k7_[i] + Real(d78) * k8_[i] + Real(d79) * k9_[i] + Real(d710) * k10_[i] + Real(d711) * k2_[i] + Real(d712) * k3_[i];
        }
        State& yt = ytmp_;
        for (std::size_t i = 0; i < N; i++) yt[i] = y_[i] + h * (Real(a141) * k1_[i] + Real(a147) * k7_[i] + Real(a148) * k8_[i] + Real(a149) * k9_[i] + Real(a1410) * k10_[i] + Real(a1411) * k2_[i] + Real(a1412) * k3_[i] + Real(a1413) * k4_[i]);
        f_(t_ + Real(c14) * h, yt, k10_);
        for (std::size_t i = 0; i < N; i++) yt[i] = y_[i] + h * (Real(a151) * k1_[i] + Real(a156) * k6_[i] + Real(a157) * k7_[i] + Real(a158) * k8_[i] + Real(a1511) * k2_[i] + Real(a1512) * k3_[i] + Real(a1513) * k4_[i] + Real(a1514) * k10_[i]);
        f_(t_ + Real(c15) * h, yt, k2_);
        for (std::size_t i = 0; i < N; i++) yt[i] = y_[i] + h * (Real(a161) * k1_[i] + Real(a166) * k6_[i] + Real(a167) * k7_[i] + Real(a168) * k8_[i] + Real(a169) * k9_[i] + Real(a1613) * k4_[i] + Real(a1614) * k10_[i] + Real(a1615) * k2_[i]);
        f_(t_ + Real(c16) * h, yt, k3_);
        stats_.n_rhs += 3;
        for (std::size_t i = 0; i < N; i++) {
            rc5_[i] = h * (rc5_[i] + Real(d413) * k4_[i] + Real(d414) * k10_[i] + Real(d415) * k2_[i] + Real(d416) * k3_[i]);
            rc6_[i] = h * (rc6_[i] + Real(d513) * k4_[i] + Real(d514) * k10_[i] + Real(d515) * k2_[i] + Real(d516) * k3_[i]);
            rc7_[i] = h * (rc7_[i] + Real(d613) * k4_[i] + Real(d614) * k10_[i] + Real(d615) * k2_[i] + Real(d616) * k3_[i]);
            rc8_[i] = h * (rc8_[i] + Real(d713) * k4_[i] + Real(d714) * k10_[i] + Real(d715) * k2_[i] + Real(d716) * k3_[i]);
        }
    }

    Real initial_step(Real hmax, Real posneg) const {
        using namespace rmath;
        Real dnf = Real(0), dny = Real(0);
        for (std::size_t i = 0; i < N; i++) {
            const Real sk = opt_.atol + opt_.rtol * r_abs(y_[i]);
            Real sqr = k1_[i] / sk;
            dnf += sqr * sqr;
            sqr = y_[i] / sk;
            dny += sqr * sqr;
        }
        Real h = (dnf <= Real(1e-10) || dny <= Real(1e-10))
                     ? Real(1e-6)
                     : r_sqrt(dny / dnf) * Real(0.01);
        h = r_min(h, hmax) * posneg;
        // one explicit Euler step to estimate the second derivative
        State yt, k2;
        for (std::size_t i = 0; i < N; i++) yt[i] = y_[i] + h * k1_[i];
        f_(t_ + h, yt, const_cast<State&>(k2));
        Real der2 = Real(0);
        for (std::size_t i = 0; i < N; i++) {
            const Real sk = opt_.atol + opt_.rtol * r_abs(y_[i]);
            const Real sqr = (k2[i] - k1_[i]) / sk;
            der2 += sqr * sqr;
        }
        der2 = r_sqrt(der2) / r_abs(h);
        const Real der12 = r_max(r_abs(der2), r_sqrt(dnf));
        Real h1 = (der12 <= Real(1e-15))
                      ? r_max(Real(1e-6), r_abs(h) * Real(1e-3))
                      : r_pow(Real(0.01) / der12, Real(1) / Real(8));
        return r_min(Real(100) * r_abs(h), r_min(h1, hmax)) * posneg;
    }
};

/// Refine an event time inside the last accepted step of `solver`, given that
/// g(t_prev, y_prev) and g(t, y) bracket a sign change. Bisection on the
/// dense interpolant down to `ttol` in time.
template <class Real, std::size_t N, class RHS, class G>
Real refine_event(const Dop853<Real, N, RHS>& solver, G g, Real ttol) {
    using namespace rmath;
    Real lo = solver.t_prev(), hi = solver.t();
    Real glo = g(lo, solver.y_prev());
    for (int it = 0; it < 200 && r_abs(hi - lo) > ttol; it++) {
        const Real mid = (lo + hi) / Real(2);
        const Real gm = g(mid, solver.dense(mid));
        if ((glo <= Real(0) && gm <= Real(0)) || (glo > Real(0) && gm > Real(0))) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / Real(2);
}

} // namespace kirchhoff
