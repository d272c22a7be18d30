use kh3::cobordism::tangle::{alpha, beta, delta, gamma, omega};
use kh3::cobordism::{CobLinComb, FlatTangle};
use proptest::prelude::*;

type C = CobLinComb<i64>;

fn smoothings() -> [FlatTangle; 5] {
    [omega(), alpha(), beta(), gamma(), delta()]
}

/// `a·disks + b·(dot on p, then disks)` from `s` to `t`.
fn morphism(s: FlatTangle, t: FlatTangle, a: i64, b: i64, p: usize) -> C {
    let d = C::disks(s, t);
    let dotted = C::dotted_identity(s, p).then(&d).unwrap();
    d.scale_int(a).add(&dotted.scale_int(b))
}

fn arrow() -> impl Strategy<Value = (i64, i64, usize)> {
    (-3i64..4, -3i64..4, 0usize..6)
}

proptest! {
    #[test]
    fn composition_is_associative(
        idx in prop::collection::vec(0usize..5, 4),
        f in arrow(),
        g in arrow(),
        h in arrow(),
    ) {
        let ts = smoothings();
        let (t0, t1, t2, t3) = (ts[idx[0]], ts[idx[1]], ts[idx[2]], ts[idx[3]]);
        let f = morphism(t0, t1, f.0, f.1, f.2);
        let g = morphism(t1, t2, g.0, g.1, g.2);
        let h = morphism(t2, t3, h.0, h.1, h.2);
        let left = f.then(&g).unwrap().then(&h).unwrap();
        let right = f.then(&g.then(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identities_are_neutral(i in 0usize..5, j in 0usize..5, a in arrow()) {
        let ts = smoothings();
        let f = morphism(ts[i], ts[j], a.0, a.1, a.2);
        prop_assert_eq!(C::identity(ts[i]).then(&f).unwrap(), f.clone());
        prop_assert_eq!(f.then(&C::identity(ts[j])).unwrap(), f);
    }

    #[test]
    fn composition_is_bilinear(i in 0usize..5, j in 0usize..5, k in 0usize..5, f in arrow(), g in arrow(), h in arrow()) {
        let ts = smoothings();
        let f = morphism(ts[i], ts[j], f.0, f.1, f.2);
        let g = morphism(ts[j], ts[k], g.0, g.1, g.2);
        let h = morphism(ts[j], ts[k], h.0, h.1, h.2);
        prop_assert_eq!(f.then(&g.add(&h)).unwrap(), f.then(&g).unwrap().add(&f.then(&h).unwrap()));
    }
}
