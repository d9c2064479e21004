// Frozen reference values. Regenerate with: python3 tools/make_oracles.py
// Each value was computed by 50-digit quadrature and cross-checked against
// an elementary closed form where one exists (see the generator).
#pragma once

namespace oracle {

// circle rho=(1+0.5 cos x)/(2pi): Shannon entropy
inline constexpr double circle_mode1_H_a05 = 1.7732389343888580;

// circle rho=(1+0.5 cos x)/(2pi): Fisher information = 1-sqrt(1-a^2)
inline constexpr double circle_mode1_I_a05 = 0.13397459621556135;

// circle rho=(1+0.5 cos x)/(2pi): int (f'')^2 rho dx = a^2/(2 sqrt(1-a^2))
inline constexpr double circle_mode1_G2_a05 = 0.14433756729740644;

// circle rho=(1+e^-1 cos x)/(2pi): Shannon entropy
inline constexpr double circle_mode1_H_ae1 = 1.8034432878484073;

// circle rho=(1+e^-1 cos x)/(2pi): Fisher information
inline constexpr double circle_mode1_I_ae1 = 0.070126504967806221;

// circle rho=(1+e^-1 cos x)/(2pi): Gamma2 integral
inline constexpr double circle_mode1_G2_ae1 = 0.072770803748915952;

// circle trig-poly flow (0.5,0.2,0.1 amplitudes), t=0.5: Shannon entropy
inline constexpr double circle_trig_H_t05 = 1.8147456956452755;

// circle trig-poly flow (0.5,0.2,0.1 amplitudes), t=0.5: Fisher information
inline constexpr double circle_trig_I_t05 = 0.046665290398851938;

// sphere zonal rho=(1+b cos th)/2, b=0.5e^-0.2 (t=0.1): Shannon entropy
inline constexpr double sphere_mode1_H_t01 = 0.66472500461822699;

// sphere zonal, b=0.5e^-0.2 (t=0.1): Fisher information
inline constexpr double sphere_mode1_I_t01 = 0.11576139930183225;

// sphere zonal, b=0.5e^-0.2 (t=0.1): Gamma2 integral
inline constexpr double sphere_mode1_G2_t01 = 0.24026252355044157;

// sphere zonal, b=0.5e^-0.6 (t=0.3): Shannon entropy
inline constexpr double sphere_mode1_H_t03 = 0.68050082450595410;

// sphere zonal, b=0.5e^-0.6 (t=0.3): Fisher information
inline constexpr double sphere_mode1_I_t03 = 0.050980486598278513;

// sphere zonal, b=0.5e^-0.6 (t=0.3): Gamma2 integral
inline constexpr double sphere_mode1_G2_t03 = 0.10357706565217671;

// line rho=0.5 N(-2,0.5)+0.5 N(2,0.5): Shannon entropy
inline constexpr double line_mix_H = 1.7589007623866889;

// line rho=0.5 N(-2,0.5)+0.5 N(2,0.5): Fisher information
inline constexpr double line_mix_I = 1.8851798845094894;

}  // namespace oracle
