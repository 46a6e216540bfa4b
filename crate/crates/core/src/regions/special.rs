//! Specializations of the general achievability conditions to three
//! classical settings (private-message broadcast coding, lossless
//! distributed source coding over noiseless links, degraded source
//! sets), plus auxiliary-variable rewrites used by the cross-checks.

use crate::measures::{Conditional, FiniteVariable, JointPmf, XMap};

use super::{AuxiliarySpec, RateTriple, RegionError, RegionReport, RegionRow, ScenarioSpec, Sense};

fn mi(p: &JointPmf, a: &[&str], b: &[&str], given: &[&str]) -> f64 {
    p.mutual_information(a, b, given)
        .expect("joint pmf contains the requested variables")
}

/// The five private-message inner-bound rows for a broadcast channel
/// p(y1,y2|x), with auxiliaries p(u0,u1,u2) independent of everything
/// else and a deterministic x(u0,u1,u2). Rows report the right-hand
/// sides only (lhs = 0); callers compare against their rate combination.
///
/// Row names give the rate combination each rhs bounds:
/// `R0+R1`, `R0+R2`, `R0+R1+R2#1`, `R0+R1+R2#2`, `2R0+R1+R2`.
pub fn specialize_marton(
    channel: &Conditional,
    aux: &Conditional,
    x_map: &XMap,
) -> Result<RegionReport, RegionError> {
    let p = compose_without_sources(channel, aux, x_map)?;
    let rows = vec![
        RegionRow::new("R0+R1", 0.0, mi(&p, &["U0", "U1"], &["Y1"], &[]), Sense::Upper),
        RegionRow::new("R0+R2", 0.0, mi(&p, &["U0", "U2"], &["Y2"], &[]), Sense::Upper),
        RegionRow::new(
            "R0+R1+R2#1",
            0.0,
            mi(&p, &["U0", "U1"], &["Y1"], &[]) + mi(&p, &["U2"], &["Y2"], &["U0"])
                - mi(&p, &["U1"], &["U2"], &["U0"]),
            Sense::Upper,
        ),
        RegionRow::new(
            "R0+R1+R2#2",
            0.0,
            mi(&p, &["U1"], &["Y1"], &["U0"]) + mi(&p, &["U0", "U2"], &["Y2"], &[])
                - mi(&p, &["U1"], &["U2"], &["U0"]),
            Sense::Upper,
        ),
        RegionRow::new(
            "2R0+R1+R2",
            0.0,
            mi(&p, &["U0", "U1"], &["Y1"], &[]) + mi(&p, &["U0", "U2"], &["Y2"], &[])
                - mi(&p, &["U1"], &["U2"], &["U0"]),
            Sense::Upper,
        ),
    ];
    Ok(RegionReport { rows })
}

/// Compose p(u0,u1,u2) * 1{x = x_map} * p(y1,y2|x) with singleton
/// sources, yielding a joint pmf containing {U0, U1, U2, X, Y1, Y2}.
fn compose_without_sources(
    channel: &Conditional,
    aux: &Conditional,
    x_map: &XMap,
) -> Result<JointPmf, RegionError> {
    let source = JointPmf::new(
        vec![FiniteVariable::new("S1", 1), FiniteVariable::new("S2", 1)],
        vec![1.0],
    )?;
    let aux_cond = Conditional::new(vec![1, 1], aux.out_shape.clone(), aux.probs.clone())?;
    let mut domain = vec![1, 1];
    domain.extend_from_slice(&x_map.domain_shape);
    let x_full = XMap::new(domain, x_map.x_size, x_map.values.clone())?;
    Ok(crate::measures::compose_scenario(
        &source, &aux_cond, &x_full, channel,
    )?)
}

/// The message-carrying scenario whose source entropies are rate sums:
/// independent uniform messages M0, M1, M2 of sizes (m0, m1, m2),
/// sources S1 = (M0, M1) and S2 = (M0, M2), base auxiliaries
/// p(u0,u1,u2) independent of the messages, and the shared message M0
/// folded into the first auxiliary (U0' = (U0, M0)). Evaluating the
/// five main coding-theorem rows on this scenario gives margins equal,
/// row by row, to (marton_rhs - rate_combination).
pub fn marton_scenario(
    channel: &Conditional,
    aux: &Conditional,
    x_map: &XMap,
    sizes: (usize, usize, usize),
) -> Result<(ScenarioSpec, AuxiliarySpec), RegionError> {
    let (m0, m1, m2) = sizes;
    let (c0, c1, c2) = (aux.out_shape[0], aux.out_shape[1], aux.out_shape[2]);
    let n1 = m0 * m1;
    let n2 = m0 * m2;
    // p(s1, s2) = 1/(m0 m1 m2) when the common components agree.
    let unit = 1.0 / (m0 * m1 * m2) as f64;
    let mut mass = vec![0.0; n1 * n2];
    for a in 0..m0 {
        for b in 0..m1 {
            for c in 0..m2 {
                mass[(a * m1 + b) * n2 + (a * m2 + c)] = unit;
            }
        }
    }
    let source = JointPmf::new(
        vec![FiniteVariable::new("S1", n1), FiniteVariable::new("S2", n2)],
        mass,
    )?;
    // U0' = (u0, a) where a is the common component of s1.
    let t0 = c0 * m0;
    let out_cells = t0 * c1 * c2;
    let mut probs = vec![0.0; n1 * n2 * out_cells];
    for s1 in 0..n1 {
        let a = s1 / m1;
        for s2 in 0..n2 {
            let slice = (s1 * n2 + s2) * out_cells;
            for u0 in 0..c0 {
                for u1 in 0..c1 {
                    for u2 in 0..c2 {
                        let base = aux.prob(0, (u0 * c1 + u1) * c2 + u2);
                        probs[slice + ((u0 * m0 + a) * c1 + u1) * c2 + u2] = base;
                    }
                }
            }
        }
    }
    let lifted_aux = Conditional::new(vec![n1, n2], vec![t0, c1, c2], probs)?;
    let mut values = Vec::with_capacity(n1 * n2 * out_cells);
    for _s1 in 0..n1 {
        for _s2 in 0..n2 {
            for t in 0..t0 {
                let u0 = t / m0;
                for u1 in 0..c1 {
                    for u2 in 0..c2 {
                        values.push(x_map.values[(u0 * c1 + u1) * c2 + u2]);
                    }
                }
            }
        }
    }
    let lifted_map = XMap::new(vec![n1, n2, t0, c1, c2], x_map.x_size, values)?;
    Ok((
        ScenarioSpec {
            source,
            channel: channel.clone(),
        },
        AuxiliarySpec {
            aux: lifted_aux,
            x_map: lifted_map,
        },
    ))
}

/// Both row systems for lossless source coding over one common and two
/// private noiseless links, evaluated for a common description V with
/// p(v|s1,s2): the four-row specialized region and the canonical
/// three-row region.
#[derive(Debug, Clone)]
pub struct GrayWynerReports {
    pub four_row: RegionReport,
    pub canonical: RegionReport,
}

pub fn specialize_gray_wyner(
    source: &JointPmf,
    v_cond: &Conditional,
    link_rates: &RateTriple,
) -> Result<GrayWynerReports, RegionError> {
    let p = adjoin_description(source, v_cond)?;
    let i = mi(&p, &["S1", "S2"], &["V"], &[]);
    let h1v = p.entropy(&["S1"], &["V"])?;
    let h2v = p.entropy(&["S2"], &["V"])?;
    let (r0, r1, r2) = (link_rates.r0, link_rates.r1, link_rates.r2);
    let four_row = RegionReport {
        rows: vec![
            RegionRow::new("R0+R1", r0 + r1, i + h1v, Sense::Lower),
            RegionRow::new("R0+R2", r0 + r2, i + h2v, Sense::Lower),
            RegionRow::new("R0+R1+R2", r0 + r1 + r2, i + h1v + h2v, Sense::Lower),
            RegionRow::new(
                "2R0+R1+R2",
                2.0 * r0 + r1 + r2,
                2.0 * i + h1v + h2v,
                Sense::Lower,
            ),
        ],
    };
    let canonical = RegionReport {
        rows: vec![
            RegionRow::new("R0", r0, i, Sense::Lower),
            RegionRow::new("R1", r1, h1v, Sense::Lower),
            RegionRow::new("R2", r2, h2v, Sense::Lower),
        ],
    };
    Ok(GrayWynerReports { four_row, canonical })
}

/// p(s1, s2, v) = p(s1, s2) * p(v | s1, s2) as a three-variable pmf.
fn adjoin_description(
    source: &JointPmf,
    v_cond: &Conditional,
) -> Result<JointPmf, RegionError> {
    let n1 = source.variables()[0].alphabet_size;
    let n2 = source.variables()[1].alphabet_size;
    let nv = v_cond.out_cells();
    let mut mass = vec![0.0; n1 * n2 * nv];
    for s1 in 0..n1 {
        for s2 in 0..n2 {
            let ps = source.mass_at(&[s1, s2]);
            for v in 0..nv {
                mass[(s1 * n2 + s2) * nv + v] = ps * v_cond.prob(s1 * n2 + s2, v);
            }
        }
    }
    Ok(JointPmf::new(
        vec![
            FiniteVariable::new("S1", n1),
            FiniteVariable::new("S2", n2),
            FiniteVariable::new("V", nv),
        ],
        mass,
    )?)
}

/// The noiseless one-common-two-private-link scenario realized as a
/// broadcast channel: X = (X0, X1, X2) with independent uniform
/// components of sizes (m0, m1, m2), Y1 = (X0, X1), Y2 = (X0, X2),
/// auxiliaries U0 = (X0, V), U1 = X1, U2 = X2 with V drawn from
/// p(v|s1,s2). Link rates are (log2 m0, log2 m1, log2 m2).
pub fn gray_wyner_scenario(
    source: &JointPmf,
    v_cond: &Conditional,
    sizes: (usize, usize, usize),
) -> Result<(ScenarioSpec, AuxiliarySpec), RegionError> {
    let (m0, m1, m2) = sizes;
    let n1 = source.variables()[0].alphabet_size;
    let n2 = source.variables()[1].alphabet_size;
    let nv = v_cond.out_cells();
    let nx = m0 * m1 * m2;
    let (ny1, ny2) = (m0 * m1, m0 * m2);
    // Deterministic channel: x = ((x0*m1)+x1)*m2 + x2 splits into its
    // components for each receiver.
    let mut ch = vec![0.0; nx * ny1 * ny2];
    for x0 in 0..m0 {
        for x1 in 0..m1 {
            for x2 in 0..m2 {
                let x = (x0 * m1 + x1) * m2 + x2;
                let y1 = x0 * m1 + x1;
                let y2 = x0 * m2 + x2;
                ch[x * ny1 * ny2 + y1 * ny2 + y2] = 1.0;
            }
        }
    }
    let channel = Conditional::new(vec![nx], vec![ny1, ny2], ch)?;
    // p(u0=(x0,v), u1=x1, u2=x2 | s1, s2) = p(v|s1,s2) / (m0 m1 m2).
    let t0 = m0 * nv;
    let out_cells = t0 * m1 * m2;
    let unit = 1.0 / (m0 * m1 * m2) as f64;
    let mut probs = vec![0.0; n1 * n2 * out_cells];
    for s in 0..n1 * n2 {
        for x0 in 0..m0 {
            for v in 0..nv {
                let pv = v_cond.prob(s, v);
                for x1 in 0..m1 {
                    for x2 in 0..m2 {
                        probs[s * out_cells + ((x0 * nv + v) * m1 + x1) * m2 + x2] = pv * unit;
                    }
                }
            }
        }
    }
    let aux = Conditional::new(vec![n1, n2], vec![t0, m1, m2], probs)?;
    let mut values = Vec::with_capacity(n1 * n2 * out_cells);
    for _s in 0..n1 * n2 {
        for t in 0..t0 {
            let x0 = t / nv;
            for x1 in 0..m1 {
                for x2 in 0..m2 {
                    values.push((x0 * m1 + x1) * m2 + x2);
                }
            }
        }
    }
    let x_map = XMap::new(vec![n1, n2, t0, m1, m2], nx, values)?;
    Ok((
        ScenarioSpec {
            source: source.clone(),
            channel,
        },
        AuxiliarySpec { aux, x_map },
    ))
}

/// Degraded source sets: decoder 1 reconstructs both sources, so the
/// roles are transformed to S1' = (S1, S2), S2' = S2 with auxiliaries
/// U0 = (U, S2), U1 = X, U2 constant and (U, X) ~ p(u, x) independent
/// of the sources. The general conditions collapse to three rows:
/// `k1`: H(S2) < I(U;Y2); `k2`: H(S1,S2) < I(U;Y2) + I(X;Y1|U);
/// `k3`: H(S1,S2) < I(X;Y1).
pub fn specialize_degraded(
    scenario: &ScenarioSpec,
    ux: &Conditional,
) -> Result<RegionReport, RegionError> {
    let p = compose_degraded(scenario, ux)?;
    let h2 = p.entropy_joint(&["S2"])?;
    let h12 = p.entropy_joint(&["S1", "S2"])?;
    let rows = vec![
        RegionRow::new("k1", h2, mi(&p, &["U"], &["Y2"], &[]), Sense::Upper),
        RegionRow::new(
            "k2",
            h12,
            mi(&p, &["U"], &["Y2"], &[]) + mi(&p, &["X"], &["Y1"], &["U"]),
            Sense::Upper,
        ),
        RegionRow::new("k3", h12, mi(&p, &["X"], &["Y1"], &[]), Sense::Upper),
    ];
    Ok(RegionReport { rows })
}

/// p(s1,s2) * p(u,x) * p(y1,y2|x) over {S1, S2, U, X, Y1, Y2}.
pub fn compose_degraded(
    scenario: &ScenarioSpec,
    ux: &Conditional,
) -> Result<JointPmf, RegionError> {
    let n1 = scenario.source.variables()[0].alphabet_size;
    let n2 = scenario.source.variables()[1].alphabet_size;
    let (nu, nx) = (ux.out_shape[0], ux.out_shape[1]);
    let (ny1, ny2) = (
        scenario.channel.out_shape[0],
        scenario.channel.out_shape[1],
    );
    let mut mass = vec![0.0; n1 * n2 * nu * nx * ny1 * ny2];
    for s1 in 0..n1 {
        for s2 in 0..n2 {
            let ps = scenario.source.mass_at(&[s1, s2]);
            if ps == 0.0 {
                continue;
            }
            for u in 0..nu {
                for x in 0..nx {
                    let pux = ux.prob(0, u * nx + x);
                    if pux == 0.0 {
                        continue;
                    }
                    for y1 in 0..ny1 {
                        for y2 in 0..ny2 {
                            let pc = scenario.channel.prob(x, y1 * ny2 + y2);
                            let flat = ((((s1 * n2 + s2) * nu + u) * nx + x) * ny1 + y1) * ny2
                                + y2;
                            mass[flat] = ps * pux * pc;
                        }
                    }
                }
            }
        }
    }
    Ok(JointPmf::new(
        vec![
            FiniteVariable::new("S1", n1),
            FiniteVariable::new("S2", n2),
            FiniteVariable::new("U", nu),
            FiniteVariable::new("X", nx),
            FiniteVariable::new("Y1", ny1),
            FiniteVariable::new("Y2", ny2),
        ],
        mass,
    )?)
}

#[derive(Debug, Clone)]
pub struct MoreCapableVerdict {
    /// Minimum of I(X;Y1) - I(X;Y2) over the grid is >= -1e-12.
    pub more_capable: bool,
    /// The minimum gap found.
    pub worst_gap: f64,
    /// The input pmf attaining the minimum gap.
    pub witness: Vec<f64>,
    pub resolution: usize,
}

/// Grid test of the receiver ordering I(X;Y1) >= I(X;Y2) for every
/// input pmf p(x), over the composition grid k/resolution. A negative
/// worst gap disproves the ordering; a non-negative worst gap grades
/// the channel as numerically ordered at this resolution.
pub fn check_more_capable(channel: &Conditional, resolution: usize) -> MoreCapableVerdict {
    let nx = channel.given_cells();
    let (ny1, ny2) = (channel.out_shape[0], channel.out_shape[1]);
    // Receiver-wise marginal transition rows.
    let mut w1 = vec![0.0; nx * ny1];
    let mut w2 = vec![0.0; nx * ny2];
    for x in 0..nx {
        for y1 in 0..ny1 {
            for y2 in 0..ny2 {
                let p = channel.prob(x, y1 * ny2 + y2);
                w1[x * ny1 + y1] += p;
                w2[x * ny2 + y2] += p;
            }
        }
    }
    let gap = |px: &[f64]| -> f64 {
        mi_channel(px, &w1, ny1) - mi_channel(px, &w2, ny2)
    };
    let mut worst_gap = f64::INFINITY;
    let mut witness = vec![0.0; nx];
    let mut counts = vec![0usize; nx];
    visit_compositions(resolution, nx, &mut counts, &mut |counts| {
        let px: Vec<f64> = counts
            .iter()
            .map(|&k| k as f64 / resolution as f64)
            .collect();
        let g = gap(&px);
        if g < worst_gap {
            worst_gap = g;
            witness = px;
        }
    });
    MoreCapableVerdict {
        more_capable: worst_gap >= -1e-12,
        worst_gap,
        witness,
        resolution,
    }
}

/// I(X;Y) for input pmf px and row-stochastic matrix w (nx x ny).
fn mi_channel(px: &[f64], w: &[f64], ny: usize) -> f64 {
    let nx = px.len();
    let mut qy = vec![0.0; ny];
    for x in 0..nx {
        for y in 0..ny {
            qy[y] += px[x] * w[x * ny + y];
        }
    }
    let mut i = 0.0;
    for x in 0..nx {
        if px[x] == 0.0 {
            continue;
        }
        for y in 0..ny {
            let p = w[x * ny + y];
            if p > 0.0 && qy[y] > 0.0 {
                i += px[x] * p * (p / qy[y]).log2();
            }
        }
    }
    i
}

/// Enumerate all ways to split `total` into `parts` non-negative
/// counts, in lexicographic order (deterministic grid).
fn visit_compositions(
    total: usize,
    parts: usize,
    scratch: &mut [usize],
    f: &mut impl FnMut(&[usize]),
) {
    fn rec(
        remaining: usize,
        idx: usize,
        scratch: &mut [usize],
        f: &mut impl FnMut(&[usize]),
    ) {
        if idx + 1 == scratch.len() {
            scratch[idx] = remaining;
            f(scratch);
            return;
        }
        for k in 0..=remaining {
            scratch[idx] = k;
            rec(remaining - k, idx + 1, scratch, f);
        }
    }
    debug_assert_eq!(scratch.len(), parts);
    rec(total, 0, scratch, f);
}

/// Replace every auxiliary Ui by (Ui, W) with one shared W, uniform on
/// {0..m-1} and independent of everything else. The symbol map ignores
/// W. Used by the discard-justification cross-checks: the five main
/// rows are invariant while the three discarded projection bounds each
/// gain log2 m.
pub fn augment_with_w(aux: &AuxiliarySpec, m: usize) -> Result<AuxiliarySpec, RegionError> {
    let (c0, c1, c2) = (
        aux.aux.out_shape[0],
        aux.aux.out_shape[1],
        aux.aux.out_shape[2],
    );
    let given = aux.aux.given_cells();
    let (t0, t1, t2) = (c0 * m, c1 * m, c2 * m);
    let out_cells = t0 * t1 * t2;
    let base_cells = c0 * c1 * c2;
    let mut probs = vec![0.0; given * out_cells];
    for s in 0..given {
        for u0 in 0..c0 {
            for u1 in 0..c1 {
                for u2 in 0..c2 {
                    let base = aux.aux.prob(s, (u0 * c1 + u1) * c2 + u2) / m as f64;
                    for w in 0..m {
                        let flat =
                            ((u0 * m + w) * t1 + (u1 * m + w)) * t2 + (u2 * m + w);
                        probs[s * out_cells + flat] = base;
                    }
                }
            }
        }
    }
    let lifted = Conditional::new(aux.aux.given_shape.clone(), vec![t0, t1, t2], probs)?;
    let (n1, n2) = (aux.x_map.domain_shape[0], aux.x_map.domain_shape[1]);
    let mut values = Vec::with_capacity(n1 * n2 * out_cells);
    for s in 0..n1 * n2 {
        for a0 in 0..t0 {
            for a1 in 0..t1 {
                for a2 in 0..t2 {
                    let (u0, u1, u2) = (a0 / m, a1 / m, a2 / m);
                    values.push(
                        aux.x_map.values[s * base_cells + (u0 * c1 + u1) * c2 + u2],
                    );
                }
            }
        }
    }
    let x_map = XMap::new(vec![n1, n2, t0, t1, t2], aux.x_map.x_size, values)?;
    Ok(AuxiliarySpec { aux: lifted, x_map })
}

/// Replace U0 by (U0, K) where K = f(S1) = g(S2) is the maximal
/// variable computable from either source alone. Used by the
/// cross-check that the common-part formulation is a special case of
/// the plain one.
pub fn augment_u0_with_common_part(
    scenario: &ScenarioSpec,
    aux: &AuxiliarySpec,
) -> Result<AuxiliarySpec, RegionError> {
    let part = crate::measures::common_part(&scenario.source)?;
    let k_size = part.size.max(1);
    let (c0, c1, c2) = (
        aux.aux.out_shape[0],
        aux.aux.out_shape[1],
        aux.aux.out_shape[2],
    );
    let n1 = scenario.source.variables()[0].alphabet_size;
    let n2 = scenario.source.variables()[1].alphabet_size;
    let t0 = c0 * k_size;
    let out_cells = t0 * c1 * c2;
    let base_cells = c0 * c1 * c2;
    let mut probs = vec![0.0; n1 * n2 * out_cells];
    for s1 in 0..n1 {
        // Zero-probability symbols never occur; class 0 keeps slices
        // normalized.
        let k = part.f[s1].unwrap_or(0);
        for s2 in 0..n2 {
            let s = s1 * n2 + s2;
            for u0 in 0..c0 {
                for u1 in 0..c1 {
                    for u2 in 0..c2 {
                        probs[s * out_cells + ((u0 * k_size + k) * c1 + u1) * c2 + u2] =
                            aux.aux.prob(s, (u0 * c1 + u1) * c2 + u2);
                    }
                }
            }
        }
    }
    let lifted = Conditional::new(vec![n1, n2], vec![t0, c1, c2], probs)?;
    let mut values = Vec::with_capacity(n1 * n2 * out_cells);
    for s in 0..n1 * n2 {
        for a0 in 0..t0 {
            let u0 = a0 / k_size;
            for u1 in 0..c1 {
                for u2 in 0..c2 {
                    values.push(aux.x_map.values[s * base_cells + (u0 * c1 + u1) * c2 + u2]);
                }
            }
        }
    }
    let x_map = XMap::new(vec![n1, n2, t0, c1, c2], aux.x_map.x_size, values)?;
    Ok(AuxiliarySpec { aux: lifted, x_map })
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::super::eval_theorem2;
    use super::*;

    fn noiseless_binary_channel() -> Conditional {
        Conditional::new(
            vec![2],
            vec![2, 2],
            vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        )
        .unwrap()
    }

    #[test]
    fn marton_deterministic_channel_common_rate() {
        // U0 = X uniform, U1 = U2 constant: both pair bounds equal 1.
        let aux = Conditional::new(vec![1], vec![2, 1, 1], vec![0.5, 0.5]).unwrap();
        let x_map = XMap::new(vec![2, 1, 1], 2, vec![0, 1]).unwrap();
        let report = specialize_marton(&noiseless_binary_channel(), &aux, &x_map).unwrap();
        assert_abs_diff_eq!(report.row("R0+R1").unwrap().rhs, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.row("R0+R2").unwrap().rhs, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn marton_constant_aux_is_degenerate() {
        let aux = Conditional::new(vec![1], vec![1, 1, 1], vec![1.0]).unwrap();
        let x_map = XMap::new(vec![1, 1, 1], 2, vec![0]).unwrap();
        let report = specialize_marton(&noiseless_binary_channel(), &aux, &x_map).unwrap();
        for row in &report.rows {
            assert_abs_diff_eq!(row.rhs, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn message_scenario_margins_match_marton() {
        // Binary U0, U1, U2 i.i.d. uniform, x = u1 XOR u2; binary
        // messages everywhere.
        let mut probs = vec![0.0; 8];
        for i in 0..8 {
            probs[i] = 1.0 / 8.0;
        }
        let aux = Conditional::new(vec![1], vec![2, 2, 2], probs).unwrap();
        let mut values = Vec::new();
        for u0 in 0..2usize {
            let _ = u0;
            for u1 in 0..2usize {
                for u2 in 0..2usize {
                    values.push(u1 ^ u2);
                }
            }
        }
        let x_map = XMap::new(vec![2, 2, 2], 2, values).unwrap();
        let channel = noiseless_binary_channel();
        let marton = specialize_marton(&channel, &aux, &x_map).unwrap();
        let (scenario, lifted) = marton_scenario(&channel, &aux, &x_map, (2, 2, 2)).unwrap();
        let thm2 = eval_theorem2(&scenario, &lifted).unwrap();
        let combos = [2.0, 2.0, 3.0, 3.0, 4.0];
        for ((m_row, t_row), combo) in marton.rows.iter().zip(&thm2.rows).zip(combos) {
            assert_abs_diff_eq!(t_row.margin, m_row.rhs - combo, epsilon = 1e-10);
        }
    }

    fn doubly_symmetric_source() -> JointPmf {
        JointPmf::new(
            vec![FiniteVariable::new("S1", 2), FiniteVariable::new("S2", 2)],
            vec![0.35, 0.15, 0.15, 0.35],
        )
        .unwrap()
    }

    #[test]
    fn gray_wyner_full_description() {
        // V = (S1, S2): row 1 rhs = H(S1,S2), canonical R0 rhs likewise.
        let source = doubly_symmetric_source();
        let mut probs = vec![0.0; 4 * 4];
        for s in 0..4 {
            probs[s * 4 + s] = 1.0;
        }
        let v_cond = Conditional::new(vec![2, 2], vec![4], probs).unwrap();
        let rates = RateTriple::new(2.0, 0.1, 0.1).unwrap();
        let h12 = source.entropy_joint(&["S1", "S2"]).unwrap();
        let got = specialize_gray_wyner(&source, &v_cond, &rates).unwrap();
        assert_abs_diff_eq!(got.four_row.rows[0].rhs, h12, epsilon = 1e-10);
        assert_abs_diff_eq!(got.canonical.rows[0].rhs, h12, epsilon = 1e-10);
        assert_abs_diff_eq!(got.canonical.rows[1].rhs, 0.0, epsilon = 1e-12);
        assert!(got.canonical.all_satisfied());
        assert!(got.four_row.all_satisfied());
    }

    #[test]
    fn gray_wyner_constant_description() {
        let source = doubly_symmetric_source();
        let v_cond = Conditional::new(vec![2, 2], vec![1], vec![1.0; 4]).unwrap();
        let rates = RateTriple::new(0.0, 1.5, 1.5).unwrap();
        let h1 = source.entropy_joint(&["S1"]).unwrap();
        let h2 = source.entropy_joint(&["S2"]).unwrap();
        let got = specialize_gray_wyner(&source, &v_cond, &rates).unwrap();
        assert_abs_diff_eq!(got.four_row.rows[0].rhs, h1, epsilon = 1e-10);
        assert_abs_diff_eq!(got.four_row.rows[2].rhs, h1 + h2, epsilon = 1e-10);
    }

    #[test]
    fn gray_wyner_channel_construction_matches_direct_rows() {
        // Integer link sizes (2, 2, 2) = one bit per link. The first
        // two rows of the general evaluation, restated as lower bounds
        // on the link-rate sums, must equal the direct four-row rhs.
        let source = doubly_symmetric_source();
        let v_cond =
            Conditional::new(vec![2, 2], vec![2], vec![0.9, 0.1, 0.7, 0.3, 0.3, 0.7, 0.1, 0.9])
                .unwrap();
        let rates = RateTriple::new(1.0, 1.0, 1.0).unwrap();
        let direct = specialize_gray_wyner(&source, &v_cond, &rates).unwrap();
        let (scenario, aux) = gray_wyner_scenario(&source, &v_cond, (2, 2, 2)).unwrap();
        let thm2 = eval_theorem2(&scenario, &aux).unwrap();
        // single1: H(S1) < (R0+R1) - [rhs1 - H(S1)] rearranges to
        // R0+R1 > rhs1, so margins agree directly.
        assert_abs_diff_eq!(
            thm2.rows[0].margin,
            direct.four_row.rows[0].margin,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            thm2.rows[1].margin,
            direct.four_row.rows[1].margin,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            thm2.rows[2].margin,
            direct.four_row.rows[2].margin,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            thm2.rows[4].margin,
            direct.four_row.rows[3].margin,
            epsilon = 1e-10
        );
    }

    #[test]
    fn canonical_rows_imply_four_rows() {
        // Row sums: each four-row inequality is a sum of canonical rows.
        let source = doubly_symmetric_source();
        let v_cond =
            Conditional::new(vec![2, 2], vec![2], vec![0.8, 0.2, 0.6, 0.4, 0.4, 0.6, 0.2, 0.8])
                .unwrap();
        let slack = RateTriple::new(1.1, 1.0, 1.0).unwrap();
        let got = specialize_gray_wyner(&source, &v_cond, &slack).unwrap();
        if got.canonical.all_satisfied() {
            assert!(got.four_row.all_satisfied());
        }
    }

    #[test]
    fn degraded_identity_channel_rows() {
        // Noiseless Y1 = Y2 = X, U constant, X uniform.
        let source = doubly_symmetric_source();
        let scenario = ScenarioSpec {
            source,
            channel: noiseless_binary_channel(),
        };
        let ux = Conditional::new(vec![1], vec![1, 2], vec![0.5, 0.5]).unwrap();
        let report = specialize_degraded(&scenario, &ux).unwrap();
        assert_abs_diff_eq!(report.row("k1").unwrap().rhs, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.row("k2").unwrap().rhs, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(report.row("k3").unwrap().rhs, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn degraded_rows_match_general_evaluation() {
        use super::super::thm::theorem2_rows;
        // Substitute S1' = (S1,S2), S2' = S2, U0 = (U,S2), U1 = X,
        // U2 = const into the general rows and compare with the
        // three-row specialization.
        let source = doubly_symmetric_source();
        let channel = Conditional::new(
            vec![2],
            vec![2, 2],
            vec![
                0.81, 0.09, 0.09, 0.01, //
                0.01, 0.09, 0.09, 0.81,
            ],
        )
        .unwrap();
        let scenario = ScenarioSpec { source, channel };
        let ux = Conditional::new(vec![1], vec![2, 2], vec![0.3, 0.2, 0.1, 0.4]).unwrap();
        let special = specialize_degraded(&scenario, &ux).unwrap();
        let p = compose_degraded(&scenario, &ux).unwrap();
        let p = p
            .adjoin_function("T1", &["S1", "S2"], 4, |s| s[0] * 2 + s[1])
            .unwrap();
        let p = p
            .adjoin_function("V0", &["U", "S2"], 4, |s| s[0] * 2 + s[1])
            .unwrap();
        let p = p.adjoin_function("C", &["U"], 1, |_| 0).unwrap();
        let rows = theorem2_rows(&p, "T1", "S2", "V0", "X", "C");
        // single2 -> k1, km2 -> k2, single1 -> k3.
        for (general, name) in [(&rows[1], "k1"), (&rows[3], "k2"), (&rows[0], "k3")] {
            let expect = special.row(name).unwrap();
            assert_abs_diff_eq!(general.lhs, expect.lhs, epsilon = 1e-10);
            assert_abs_diff_eq!(general.rhs, expect.rhs, epsilon = 1e-10);
        }
    }

    #[test]
    fn identity_versus_erasure_is_more_capable() {
        // Y1 = X (binary); Y2 = X erased with probability 0.3
        // (three-symbol output, index 2 = erasure).
        let mut probs = vec![0.0; 2 * 2 * 3];
        for x in 0..2 {
            probs[x * 6 + x * 3 + x] = 0.7;
            probs[x * 6 + x * 3 + 2] = 0.3;
        }
        let channel = Conditional::new(vec![2], vec![2, 3], probs).unwrap();
        let verdict = check_more_capable(&channel, 64);
        assert!(verdict.more_capable);
        assert!(verdict.worst_gap >= 0.0);
    }

    #[test]
    fn identical_receivers_gap_is_zero() {
        let channel = Conditional::new(
            vec![2],
            vec![2, 2],
            vec![0.9, 0.0, 0.0, 0.1, 0.1, 0.0, 0.0, 0.9],
        )
        .unwrap();
        let verdict = check_more_capable(&channel, 50);
        assert!(verdict.more_capable);
        assert_abs_diff_eq!(verdict.worst_gap, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn crossing_orders_are_detected() {
        // Y1 = BSC(0.11) output; Y2 = erasure of X with probability
        // 0.6. At uniform input Y1 carries more information; near the
        // corners the erasure channel's steeper entropy slope wins.
        let mut probs = vec![0.0; 2 * 2 * 3];
        let bsc = 0.11;
        for x in 0..2 {
            for y1 in 0..2 {
                let p1 = if y1 == x { 1.0 - bsc } else { bsc };
                probs[x * 6 + y1 * 3 + x] += p1 * 0.4;
                probs[x * 6 + y1 * 3 + 2] += p1 * 0.6;
            }
        }
        let channel = Conditional::new(vec![2], vec![2, 3], probs).unwrap();
        let verdict = check_more_capable(&channel, 200);
        assert!(!verdict.more_capable);
        assert!(verdict.worst_gap < -1e-4);
        // The witness reproduces the negative gap.
        assert!(verdict.witness.iter().sum::<f64>() > 0.999);
    }

    #[test]
    fn w_augmentation_preserves_main_margins() {
        let source = doubly_symmetric_source();
        let scenario = ScenarioSpec {
            source,
            channel: noiseless_binary_channel(),
        };
        let aux = Conditional::new(
            vec![2, 2],
            vec![2, 2, 1],
            vec![
                0.4, 0.1, 0.3, 0.2, //
                0.25, 0.25, 0.25, 0.25, //
                0.1, 0.2, 0.3, 0.4, //
                0.2, 0.3, 0.4, 0.1,
            ],
        )
        .unwrap();
        let mut values = Vec::new();
        for s in 0..4 {
            let _ = s;
            for u0 in 0..2 {
                for u1 in 0..2usize {
                    let _ = u0;
                    values.push(u1);
                }
            }
        }
        let x_map = XMap::new(vec![2, 2, 2, 2, 1], 2, values).unwrap();
        let base = AuxiliarySpec { aux, x_map };
        let plain = eval_theorem2(&scenario, &base).unwrap();
        let lifted = augment_with_w(&base, 4).unwrap();
        let wide = eval_theorem2(&scenario, &lifted).unwrap();
        for (a, b) in plain.rows.iter().zip(&wide.rows) {
            assert_abs_diff_eq!(a.margin, b.margin, epsilon = 1e-9);
        }
    }
}
