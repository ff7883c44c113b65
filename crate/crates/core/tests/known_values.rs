use cfk::invariants::{epsilon, nu, nu_plus, tau, v, InvariantReport};
use cfk::{build_complex, parse, BifilteredComplex};

fn complex(text: &str) -> BifilteredComplex {
    build_complex(&parse(text).unwrap()).unwrap()
}

const K: &str = "torus(2,9) # mirror(cable(2,5,torus(2,3)))";
const K_PRIME: &str = "torus(2,5) # torus(2,3) # torus(2,3) # mirror(cable(2,5,torus(2,3)))";

#[test]
fn tau_of_torus_and_mirrored_cable() {
    assert_eq!(tau(&complex("torus(2,9)")).unwrap(), 4);
    assert_eq!(tau(&complex("mirror(cable(2,5,torus(2,3)))")).unwrap(), -4);
}

#[test]
fn two_summand_knot() {
    let c = complex(K);
    assert_eq!(c.len(), 45);
    assert_eq!((tau(&c).unwrap(), nu(&c).unwrap(), nu_plus(&c).unwrap()), (0, 1, 2));
    assert_eq!(epsilon(&c).unwrap(), -1);
    assert!(v(&c, 0).unwrap() >= 1);
    assert!(v(&c, 1).unwrap() >= 1);
    assert_eq!(v(&c, 2).unwrap(), 0);
}

#[test]
fn four_summand_knot() {
    let c = complex(K_PRIME);
    assert_eq!(c.len(), 225);
    assert!(c.validate().is_ok());
    let r = InvariantReport::compute(&c, -8..=8).unwrap();
    assert_eq!((r.tau, r.nu, r.nu_plus, r.epsilon), (0, 1, 2, -1));
    assert!(r.symmetry_violations().is_empty());
    assert_eq!(r.v_table[&0], 1);
    assert_eq!(r.v_table[&1], 1);
    assert_eq!(r.v_table[&2], 0);
}

#[test]
fn torus_knots_are_sharp() {
    for (p, q) in [(2, 3), (2, 5), (2, 7), (2, 9), (3, 4), (3, 5)] {
        let c = complex(&format!("torus({p},{q})"));
        let g = (p - 1) * (q - 1) / 2;
        assert_eq!(tau(&c).unwrap(), g);
        assert_eq!(nu_plus(&c).unwrap(), g);
        assert_eq!(c.top_alexander(), g);
    }
}
