//! Shared fixtures for the benchmark targets.

use gassym_core::expr::{parse, Expr, FuncDef};
use gassym_core::gasdyn::{build_blowup_family, FamilyParams, GasFields};

pub fn symbolic_blowup() -> GasFields {
    build_blowup_family(&FamilyParams::symbolic(), None, None).expect("symbolic parameters")
}

pub fn figure_blowup() -> GasFields {
    let params = FamilyParams::new(
        Expr::ratio(4, 5),
        Expr::ratio(3, 5),
        Expr::one(),
        Expr::one(),
    )
    .unwrap();
    let phi = FuncDef::new(2, parse("-arg2^2 - arg1^2").unwrap());
    let f = FuncDef::new(1, Expr::zero());
    build_blowup_family(&params, Some(&phi), Some(&f)).unwrap()
}
