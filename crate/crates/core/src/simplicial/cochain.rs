use serde::{Deserialize, Serialize};

use super::space::SimplicialSpace;
use super::SpaceError;

/// Coefficients: `Z` or the orientation-twisted `Z^w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Twist {
    Trivial,
    W,
}

impl Twist {
    /// Coefficients of a product: `Z^w (x) Z^w = Z`.
    pub fn combine(self, other: Twist) -> Twist {
        if self == other {
            Twist::Trivial
        } else {
            Twist::W
        }
    }
}

/// A simplicial chain; `coeffs` is indexed by all simplices of `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: i64,
    pub twist: Twist,
    pub coeffs: Vec<i64>,
}

/// A simplicial cochain; `values` is indexed by all simplices of `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: i64,
    pub twist: Twist,
    pub values: Vec<i64>,
}

impl Chain {
    pub fn zero(k: &SimplicialSpace, degree: i64, twist: Twist) -> Chain {
        Chain { degree, twist, coeffs: vec![0; k.count(degree)] }
    }

    pub fn from_terms(k: &SimplicialSpace, degree: i64, twist: Twist, terms: &[(Vec<usize>, i64)]) -> Result<Chain, SpaceError> {
        let mut c = Chain::zero(k, degree, twist);
        for (s, x) in terms {
            let mut s = s.clone();
            s.sort_unstable();
            if s.len() as i64 != degree + 1 {
                return Err(SpaceError::Invalid(format!("{s:?} is not a {degree}-simplex")));
            }
            let i = k.index_of(&s).ok_or_else(|| SpaceError::Invalid(format!("{s:?} is not in the space")))?;
            c.coeffs[i] += x;
        }
        Ok(c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!((self.degree, self.twist), (other.degree, other.twist));
        Chain { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(), ..self.clone() }
    }

    pub fn scale(&self, k: i64) -> Chain {
        Chain { coeffs: self.coeffs.iter().map(|a| a * k).collect(), ..self.clone() }
    }

    pub fn terms(&self, k: &SimplicialSpace) -> Vec<(Vec<usize>, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (k.simplex(self.degree as usize, i).to_vec(), c))
            .collect()
    }

    /// Check the chain lives on `k`.
    pub fn check(&self, k: &SimplicialSpace) -> Result<(), SpaceError> {
        if self.coeffs.len() != k.count(self.degree) {
            return Err(SpaceError::Mismatch(format!(
                "{}-chain has {} coefficients, space has {} simplices",
                self.degree,
                self.coeffs.len(),
                k.count(self.degree)
            )));
        }
        Ok(())
    }

    pub fn to_json(&self, k: &SimplicialSpace) -> ChainJson {
        ChainJson { degree: self.degree, twisted: self.twist == Twist::W, terms: self.terms(k) }
    }

    pub fn from_json(k: &SimplicialSpace, j: &ChainJson) -> Result<Chain, SpaceError> {
        let twist = if j.twisted { Twist::W } else { Twist::Trivial };
        Chain::from_terms(k, j.degree, twist, &j.terms)
    }
}

impl Cochain {
    pub fn zero(k: &SimplicialSpace, degree: i64, twist: Twist) -> Cochain {
        Cochain { degree, twist, values: vec![0; k.count(degree)] }
    }

    /// Constant cochain `1` on vertices.
    pub fn unit(k: &SimplicialSpace) -> Cochain {
        Cochain { degree: 0, twist: Twist::Trivial, values: vec![1; k.count(0)] }
    }

    pub fn from_terms(k: &SimplicialSpace, degree: i64, twist: Twist, terms: &[(Vec<usize>, i64)]) -> Result<Cochain, SpaceError> {
        let c = Chain::from_terms(k, degree, twist, terms)?;
        Ok(Cochain { degree, twist, values: c.coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!((self.degree, self.twist), (other.degree, other.twist));
        Cochain { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(), ..self.clone() }
    }

    pub fn scale(&self, k: i64) -> Cochain {
        Cochain { values: self.values.iter().map(|a| a * k).collect(), ..self.clone() }
    }

    pub fn check(&self, k: &SimplicialSpace) -> Result<(), SpaceError> {
        if self.values.len() != k.count(self.degree) {
            return Err(SpaceError::Mismatch(format!(
                "{}-cochain has {} values, space has {} simplices",
                self.degree,
                self.values.len(),
                k.count(self.degree)
            )));
        }
        Ok(())
    }

    /// Vanishes on the subcomplex `A`.
    pub fn is_relative(&self, k: &SimplicialSpace) -> bool {
        self.degree < 0
            || self.degree as usize > k.dim()
            || self.values.iter().enumerate().all(|(i, &v)| v == 0 || !k.in_sub(self.degree as usize, i))
    }

    pub fn to_json(&self, k: &SimplicialSpace) -> ChainJson {
        let c = Chain { degree: self.degree, twist: self.twist, coeffs: self.values.clone() };
        c.to_json(k)
    }
}

/// `{"degree": d, "twisted": bool, "terms": [[[v0, .., vd], coeff], ..]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    pub degree: i64,
    #[serde(default)]
    pub twisted: bool,
    pub terms: Vec<(Vec<usize>, i64)>,
}
