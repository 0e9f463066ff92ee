//! Small ideals with hand-derived decompositions.
#![allow(dead_code)]

use std::sync::Arc;

use primdec::{parse_polynomial, Ideal, PolyRing, SymmetryAction, Q};

pub struct Case {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub gens: &'static [&'static str],
    /// Associated primes, each as a generator list.
    pub primes: &'static [&'static [&'static str]],
    /// Permutations (cycles of variable names) that map the ideal to itself.
    pub symmetry: &'static [&'static [&'static [&'static str]]],
}

impl Case {
    pub fn ring(&self) -> Arc<PolyRing> {
        PolyRing::new(self.vars.iter().copied()).unwrap()
    }

    pub fn ideal(&self) -> Ideal<Q> {
        ideal(&self.ring(), self.gens)
    }

    pub fn prime_ideals(&self) -> Vec<Ideal<Q>> {
        let r = self.ring();
        self.primes.iter().map(|p| ideal(&r, p)).collect()
    }

    /// Prime exactly when the oracle lists one associated prime equal to
    /// the ideal itself.
    pub fn is_prime(&self) -> bool {
        self.primes.len() == 1 && self.ideal().equals(&self.prime_ideals()[0]).unwrap()
    }

    pub fn symmetries(&self) -> Vec<SymmetryAction> {
        let r = self.ring();
        self.symmetry
            .iter()
            .map(|cycles| {
                let cs: Vec<Vec<usize>> = cycles
                    .iter()
                    .map(|c| c.iter().map(|n| r.var_index(n).unwrap()).collect())
                    .collect();
                SymmetryAction::from_cycles(r.nvars(), &cs).unwrap()
            })
            .collect()
    }
}

pub fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal<Q> {
    Ideal::new(
        r,
        gens.iter()
            .map(|g| parse_polynomial(r, g).unwrap())
            .collect(),
    )
    .unwrap()
}

const XYZ: &[&str] = &["x", "y", "z"];
const XY: &[&str] = &["x", "y"];
const X: &[&str] = &["x"];
const XYZW: &[&str] = &["x", "y", "z", "w"];

pub const CORPUS: &[Case] = &[
    Case {
        name: "xy,xz",
        vars: XYZ,
        gens: &["x*y", "x*z"],
        primes: &[&["x"], &["y", "z"]],
        symmetry: &[&[&["y", "z"]]],
    },
    Case {
        name: "x^2,xy",
        vars: XY,
        gens: &["x^2", "x*y"],
        primes: &[&["x"], &["x", "y"]],
        symmetry: &[],
    },
    Case {
        name: "x^2-1",
        vars: X,
        gens: &["x^2-1"],
        primes: &[&["x-1"], &["x+1"]],
        symmetry: &[],
    },
    Case {
        name: "xy",
        vars: XY,
        gens: &["x*y"],
        primes: &[&["x"], &["y"]],
        symmetry: &[&[&["x", "y"]]],
    },
    Case {
        name: "x^2,y^2",
        vars: XY,
        gens: &["x^2", "y^2"],
        primes: &[&["x", "y"]],
        symmetry: &[&[&["x", "y"]]],
    },
    Case {
        name: "xyz",
        vars: XYZ,
        gens: &["x*y*z"],
        primes: &[&["x"], &["y"], &["z"]],
        symmetry: &[&[&["x", "y"]], &[&["y", "z"]]],
    },
    Case {
        name: "xy,yz,xz",
        vars: XYZ,
        gens: &["x*y", "y*z", "x*z"],
        primes: &[&["x", "y"], &["y", "z"], &["x", "z"]],
        symmetry: &[&[&["x", "y"]], &[&["x", "y", "z"]]],
    },
    Case {
        name: "x^2-2",
        vars: X,
        gens: &["x^2-2"],
        primes: &[&["x^2-2"]],
        symmetry: &[],
    },
    Case {
        name: "circle-line",
        vars: XY,
        gens: &["x^2+y^2-1", "x-y"],
        primes: &[&["x-y", "2*y^2-1"]],
        symmetry: &[&[&["x", "y"]]],
    },
    Case {
        name: "x^3-x",
        vars: X,
        gens: &["x^3-x"],
        primes: &[&["x"], &["x-1"], &["x+1"]],
        symmetry: &[],
    },
    Case {
        name: "twisted-cubic",
        vars: XYZ,
        gens: &["y-x^2", "z-x^3"],
        primes: &[&["y-x^2", "z-x^3"]],
        symmetry: &[],
    },
    Case {
        name: "four-points",
        vars: XY,
        gens: &["x^2-x", "y^2-y"],
        primes: &[&["x", "y"], &["x", "y-1"], &["x-1", "y"], &["x-1", "y-1"]],
        symmetry: &[&[&["x", "y"]]],
    },
    Case {
        name: "x^2y,xy^2",
        vars: XY,
        gens: &["x^2*y", "x*y^2"],
        primes: &[&["x"], &["y"], &["x", "y"]],
        symmetry: &[&[&["x", "y"]]],
    },
    Case {
        name: "x^4-1",
        vars: X,
        gens: &["x^4-1"],
        primes: &[&["x-1"], &["x+1"], &["x^2+1"]],
        symmetry: &[],
    },
    Case {
        name: "xw-yz",
        vars: XYZW,
        gens: &["x*w-y*z"],
        primes: &[&["x*w-y*z"]],
        symmetry: &[&[&["x", "w"]], &[&["x", "y"], &["w", "z"]]],
    },
    Case {
        name: "x^2+1,y^2+1",
        vars: XY,
        gens: &["x^2+1", "y^2+1"],
        primes: &[&["x^2+1", "y-x"], &["x^2+1", "y+x"]],
        symmetry: &[&[&["x", "y"]]],
    },
    Case {
        name: "x^2-y^2",
        vars: XY,
        gens: &["x^2-y^2"],
        primes: &[&["x-y"], &["x+y"]],
        symmetry: &[&[&["x", "y"]]],
    },
    Case {
        name: "cusp",
        vars: XY,
        gens: &["y^2-x^3"],
        primes: &[&["y^2-x^3"]],
        symmetry: &[],
    },
    Case {
        name: "projective-twisted-cubic",
        vars: XYZW,
        gens: &["x*z-y^2", "y*w-z^2", "x*w-y*z"],
        primes: &[&["x*z-y^2", "y*w-z^2", "x*w-y*z"]],
        symmetry: &[&[&["x", "w"], &["y", "z"]]],
    },
    Case {
        name: "x^2+y^2",
        vars: XY,
        gens: &["x^2+y^2"],
        primes: &[&["x^2+y^2"]],
        symmetry: &[&[&["x", "y"]]],
    },
    Case {
        name: "cubic-and-line",
        vars: XYZ,
        gens: &["x*z-y^2", "x^3-y*z"],
        primes: &[&["x*z-y^2", "x^2*y-z^2", "x^3-y*z"], &["x", "y"]],
        symmetry: &[],
    },
];
