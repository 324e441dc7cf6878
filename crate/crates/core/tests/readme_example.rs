use gaql_core::{exponentiate, parse_polynomial, Derivation, Ring};

#[test]
fn rotation_like_action() -> Result<(), Box<dyn std::error::Error>> {
    let r = Ring::new(["x", "y", "u", "v"])?;
    let images = ["0", "0", "y", "-x"]
        .iter()
        .map(|s| parse_polynomial(s, &r))
        .collect::<Result<Vec<_>, _>>()?;
    let d = Derivation::new(&r, images)?;
    let cert = d.certify_locally_nilpotent(64);
    let action = exponentiate(&d, &cert)?;
    assert_eq!(action.component_strings(), ["x", "y", "u + t*y", "v - t*x"]);
    Ok(())
}
