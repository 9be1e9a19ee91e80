#pragma once

// Frozen reference values for the boundary-crossing identity layer, from a
// 40-digit arbitrary-precision run plus an independent Volterra integral
// equation solver for the curved-boundary cases (accuracy noted per table).
// Regeneration: dev-side script; values are committed, not rebuilt.

namespace fpt::testdata {

struct Row1 { double a; };
struct Row2 { double a, b; };

// first-passage density of OU(lam=1) from x0=0 up to level a=1
inline constexpr Row2 kOuLevelUp1[] = {
    {0.3, 0.31190570760878505},
    {0.5, 0.3072422190742354},
    {0.75, 0.25987456200825365},
    {1.0, 0.22156285790908745},
    {1.5, 0.17313105872016515},
    {2.0, 0.14435879361073886},
};

// OU(lam=0.8) from x0=-0.4 up to a=0.5
inline constexpr Row2 kOuLevelUp2[] = {
    {0.4, 0.576213190019966},
    {1.0, 0.321331241311053},
    {2.5, 0.1279232493449224},
};

// OU(lam=0.9) from x0=1.1 down to a=0.3
inline constexpr Row2 kOuLevelDown1[] = {
    {0.5, 0.8199073138294808},
    {1.0, 0.3667170398328933},
    {2.0, 0.09781597252786396},
};

// first 10 positive zeros of v -> D_v(-sqrt(2)) (lam=1, a=1 up-crossing)
inline constexpr Row1 kOuZerosUp1[] = {
    {0.23423387173354332},
    {1.6974628386291482},
    {3.280191014275086},
    {4.929813575363634},
    {6.6224443852684525},
    {8.345489718978925},
    {10.091453225091918},
    {11.855469637240333},
    {13.634176622188166},
    {15.42513815647207},
};

// first 8 positive zeros of v -> D_v(0.3*sqrt(1.8)) (down-crossing set)
inline constexpr Row1 kOuZerosDown1[] = {
    {1.3532688950046767},
    {3.5144805993651285},
    {5.635014224358426},
    {7.735399109870494},
    {9.82321958917168},
    {11.902252259108101},
    {13.974696521621569},
    {16.041965159037215},
};

// BM from w0=0 up to sqrt(2)*sqrt(1+s): density in s
inline constexpr Row2 kBmSqrtUp[] = {
    {0.5, 0.08086629415920062},
    {1.0, 0.08010084448829659},
    {3.0, 0.03378270493585461},
};

// BM from w0=1.1*sqrt(1.8) down to 0.3*sqrt(1.8)*sqrt(1+s)
inline constexpr Row2 kBmSqrtDown[] = {
    {0.5, 0.4580935486520411},
    {2.0, 0.12525245596819407},
};

// erf-drift process (lam=0.9) from x0=1.1 down to level 0.3
inline constexpr Row2 kErfDrift[] = {
    {0.5, 0.9367140110162955},
    {1.0, 0.26714117341308424},
};

// OU(1) from 0 up to 1 + 0.4 e^{-t} + 0.3 e^{t} (Volterra, ~1e-8 accurate)
inline constexpr Row2 kOuTwoParamH[] = {
    {0.5, 0.02083839049303846},
    {1.0, 0.012827115500159863},
    {1.6, 0.0007219690765732463},
};

// OU(1) from 0 up to sqrt(Tp(t) Tm(t)/1.7), alpha=0.4 beta=0.3 (Volterra, ~1e-8 accurate)
inline constexpr Row2 kOuTwoParamQ[] = {
    {0.5, 0.0929593352430368},
    {1.0, 0.026474465046259613},
    {1.6, 0.0003117693931113285},
};

// coth-drift (omega=1.1) from x0=2 down to level 1
inline constexpr Row2 kCothConst[] = {
    {0.5, 0.09192326903741702},
    {1.5, 0.0188159032633725},
};

// coth-drift (omega=1.1) from x0=2 down to the line 0.3 t + 1
inline constexpr Row2 kCothLine[] = {
    {0.5, 0.1480988265944844},
    {1.5, 0.041996893037571946},
};

// Pearson diffusion (r=0.8, p=0.4, q=0.5) from u0=1.2 down to h=0.4
inline constexpr Row2 kPearson[] = {
    {0.5, 0.17761105406920352},
    {1.0, 0.0658625694477428},
    {2.0, 0.01766697388649317},
};

// E[e^{-lam T}] Bessel(3) from 1.5 down to 0.5
inline constexpr Row2 kBessel3Laplace[] = {
    {0.5, 0.12262648039048077},
    {1.0, 0.08103891147807141},
    {2.0, 0.045111761078870896},
};

// E[e^{-lam T}] Bessel(4) from 1.5 down to 0.5
inline constexpr Row2 kBessel4Laplace[] = {
    {0.5, 0.05582003431072577},
    {1.0, 0.03845176594758213},
    {2.0, 0.022238438701500905},
};

// E[e^{-lam T}] Bessel-with-drift (omega=0.75, kappa=1.2) 1.4 -> 0.6
inline constexpr Row2 kBesselDriftLaplace[] = {
    {0.5, 0.06917755502309648},
    {1.0, 0.055080456917624414},
    {2.0, 0.03787717686127412},
};

// E[e^{-s T}] radial OU (omega=1.5, gamma=0.7) 1.6 -> 0.8
inline constexpr Row2 kRadialOuLaplace[] = {
    {0.5, 0.3737970171751328},
    {1.0, 0.23472413331514078},
    {2.0, 0.13095297902817685},
};

// E[e^{-s T}] sinh-drift F4 (kappa=0.6) 1.4 -> 0.7
inline constexpr Row2 kSinhLaplace[] = {
    {0.5, 0.07094329461515406},
    {1.0, 0.06072217008091818},
    {2.0, 0.04604603825663038},
};

// E[(T+1)^mu] Bessel(5) from 1.6*sqrt(1.4) down to 0.8*sqrt(1.4)*sqrt(1+t)
inline constexpr Row2 kBesselSqrtMellin[] = {
    {-0.3, 0.283277696580609},
    {-0.7, 0.18762523678491452},
};

// E[e^{-mu T}] OU(lam=1) from 0 up to 1
inline constexpr Row2 kOuLaplaceUp[] = {
    {0.5, 0.33788458755196843},
    {1.0, 0.19964144074771736},
    {2.0, 0.1012331612943284},
};

// Bessel(3)-with-drift (kappa=1.2) density from 1.4 down to 0.6
inline constexpr Row2 kBesselDriftDensity[] = {
    {0.4, 0.12864537565585613},
    {1.0, 0.034145250376054724},
};

}  // namespace fpt::testdata
