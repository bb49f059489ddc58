use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{res_x_plus, residues_by_pole, sign_of};
use crate::error::{Error, Result};
use crate::symcore::{parse_rational, RationalSection};

/// Variables in application order (the first entry is the innermost residue)
/// together with the orientation scalar `Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableOrdering {
    order: Vec<usize>,
    delta: BigRational,
}

impl VariableOrdering {
    pub fn new(order: Vec<usize>, delta: BigRational) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &v in &order {
            if v >= order.len() || seen[v] {
                return Err(Error::Structural(format!("{order:?} is not a permutation")));
            }
            seen[v] = true;
        }
        if delta.is_zero() {
            return Err(Error::Structural("Δ must be nonzero".into()));
        }
        Ok(VariableOrdering { order, delta })
    }

    /// `X` first, then `Y1, Y2, …`; `Δ = 1`.
    pub fn identity(nvars: usize) -> Self {
        VariableOrdering { order: (0..nvars).collect(), delta: BigRational::one() }
    }

    /// Parses `"1,0,2"`-style permutations.
    pub fn parse(text: &str, delta: Option<&str>) -> Result<Self> {
        let order = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad ordering entry {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let delta = match delta {
            Some(d) => parse_rational(d)?,
            None => BigRational::one(),
        };
        VariableOrdering::new(order, delta)
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn delta(&self) -> &BigRational {
        &self.delta
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn with_delta(&self, delta: BigRational) -> Result<Self> {
        VariableOrdering::new(self.order.clone(), delta)
    }
}

fn check_ordering(nvars: usize, ordering: &VariableOrdering) -> Result<()> {
    if ordering.len() != nvars {
        return Err(Error::Structural(format!(
            "ordering has {} entries for {nvars} variables",
            ordering.len()
        )));
    }
    Ok(())
}

/// The constant left once every variable is eliminated, integrated over the
/// coefficient algebra.
fn final_value(s: &RationalSection) -> Result<BigRational> {
    let p = s
        .integrate()
        .to_polynomial()
        .ok_or_else(|| Error::NonGenericOrdering("a denominator survived every residue".into()))?;
    let p = p.coeff(0);
    if !p.is_constant() {
        return Err(Error::NonGenericOrdering("non-constant value after every residue".into()));
    }
    Ok(p.constant_term())
}

/// `Δ · Res^+_{last} ∘ … ∘ Res^+_{first}(h)`.
pub fn iterated_res(h: &RationalSection, ordering: &VariableOrdering) -> Result<BigRational> {
    check_ordering(h.nvars(), ordering)?;
    let mut cur = h.clone();
    for &v in ordering.order() {
        cur = res_x_plus(&cur, v)?;
    }
    Ok(final_value(&cur)? * ordering.delta())
}

/// A section multiplied by a formal exponential `e^{⟨λ,x⟩}`. The exponent
/// is a lexicographic sequence of layers `λ + δλ' + δ²λ'' + …` with `δ`
/// infinitesimal; only its signs are ever consulted.
#[derive(Clone, Debug)]
pub struct WeightedSection {
    pub section: RationalSection,
    pub layers: Vec<Vec<BigRational>>,
}

impl WeightedSection {
    fn sign(&self, var: usize) -> i8 {
        self.layers.iter().map(|l| sign_of(&l[var])).find(|&s| s != 0).unwrap_or(0)
    }
}

/// Iterated residue where each term keeps its residues in a variable only
/// when its exponent is positive there; the exponent is carried through
/// each pole substitution `x_v = ⟨b, x⟩`.
pub fn selected_iterated_res(terms: &[WeightedSection], ordering: &VariableOrdering) -> Result<BigRational> {
    let mut cur: Vec<WeightedSection> = terms.to_vec();
    for &v in ordering.order() {
        let mut next = Vec::new();
        for t in &cur {
            check_ordering(t.section.nvars(), ordering)?;
            if t.section.is_zero() {
                continue;
            }
            match t.sign(v) {
                0 => {
                    return Err(Error::NonGenericOrdering(format!(
                        "exponent vanishes identically in variable {v}"
                    )))
                }
                s if s < 0 => continue,
                _ => {}
            }
            for pole in residues_by_pole(&t.section, v)? {
                if pole.residue.is_zero() {
                    continue;
                }
                let layers = t
                    .layers
                    .iter()
                    .map(|l| {
                        (0..l.len())
                            .map(|i| if i == v { BigRational::zero() } else { &l[i] + &l[v] * &pole.location[i] })
                            .collect()
                    })
                    .collect();
                next.push(WeightedSection { section: pole.residue, layers });
            }
        }
        cur = next;
    }
    let mut total = BigRational::zero();
    for t in &cur {
        total += final_value(&t.section)?;
    }
    Ok(total * ordering.delta())
}
