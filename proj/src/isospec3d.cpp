#include "trapspec/isospec3d.hpp"

#include <cstdlib>
#include <string>

#include "trapspec/errors.hpp"
#include "trapspec/io.hpp"

namespace trapspec {

bool on_ladder(int N, int L) { return L >= 0 && N >= L && (N - L) % 2 == 0; }

bool QuantumNumbers3D::valid() const { return on_ladder(N, L) && std::abs(M) <= L; }

void QuantumNumbers3D::validate() const {
    if (!valid()) {
        throw DomainError("invalid 3D quantum numbers (N=" + std::to_string(N) + ", L=" + std::to_string(L) +
                          ", M=" + std::to_string(M) + "): need L <= N, N - L even, |M| <= L");
    }
}

double energy_3d(int N, const OscillatorUnits& units) {
    if (N < 0) {
        throw DomainError("energy_3d: N must be nonnegative");
    }
    return units.offset + units.quantum() * (N + 1.5);
}

RadialEigenstate3D radial_wavefunction_3d(int N, int L, const OscillatorUnits& units) {
    QuantumNumbers3D qn{N, L, 0};
    qn.validate();
    const double r0 = units.length();
    OscillatorRadial radial((N - L) / 2, L, r0);
    return {qn, r0, radial.norm(), energy_3d(N, units), radial};
}

long long degeneracy(int N) {
    if (N < 0) {
        throw DomainError("degeneracy: N must be nonnegative");
    }
    const long long n = N;
    return (n + 1) * (n + 2) / 2;
}

long long shell_capacity(int N) {
    if (N < -1) {
        throw DomainError("shell_capacity: N must be at least -1");
    }
    const long long n = N;
    return (n + 1) * (n + 2) * (n + 3) / 6;
}

long long valence_total(int N, int d) {
    if (N < -1) {
        throw DomainError("valence_total: N must be at least -1");
    }
    if (d < 1 || d > degeneracy(N + 1)) {
        throw DomainError("valence_total: valence count d=" + std::to_string(d) + " outside [1, " +
                          std::to_string(degeneracy(N + 1)) + "]");
    }
    return d + shell_capacity(N);
}

ShellReport shell_report(int N, int valence_count) {
    return {N, degeneracy(N), shell_capacity(N), valence_count, valence_total(N, valence_count)};
}

std::vector<SpectrumRow> spectrum_table_3d(int max_N, const OscillatorUnits& units) {
    std::vector<SpectrumRow> rows;
    for (int N = 0; N <= max_N; ++N) {
        for (int L = N % 2; L <= N; L += 2) {
            const double e = energy_3d(N, units);
            rows.push_back({N, L, 2LL * L + 1, e, N + 1.5});
        }
    }
    return rows;
}

std::string spectrum_csv_3d(const std::vector<SpectrumRow>& rows) {
    std::string out = "N,L,degeneracy,E_joules,E_over_hbar_omega0\n";
    for (const auto& r : rows) {
        out += std::to_string(r.N) + ',' + std::to_string(r.L) + ',' + std::to_string(r.degeneracy) + ',' +
               format_real(r.energy) + ',' + format_real(r.energy_in_quanta) + '\n';
    }
    return out;
}

}  // namespace trapspec
