use hayes_core::curve::CurveModel;
use hayes_core::ideal::FracIdeal;
use hayes_core::basis::IdealFamily;
use hayes_core::laurent::LaurentSeries;

fn main() {
    let m = CurveModel::rational(3, 1).unwrap();
    let a = FracIdeal::unit(&m);
    let third = m.one_elem().div(&m.x_elem()).unwrap();
    let rel = 41i64;
    let fam = IdealFamily::new(&a, 26);
    let m_ser = m.embed(&third, 1 + rel).unwrap();
    println!("m_ser val={:?} prec={}", m_ser.val(), m_ser.prec());
    let inf = m.inf_field();
    let mut t = m_ser.clone();
    let mut c = LaurentSeries::one(&inf, rel);
    let mut pivots: Vec<LaurentSeries> = vec![];
    for (step, member) in fam.members().iter().enumerate().take(27) {
        let mut s = m.embed(&member.elem, member.elem.val().unwrap() + rel).unwrap();
        for sp in &pivots {
            let fr = s.frobenius_q(3);
            let fr = fr.truncate(fr.val().map(|x| x + rel).unwrap_or(fr.prec()));
            s = fr.sub(&sp.mul(&s));
        }
        let s_pow = s.pow(2).unwrap();
        let fr = t.frobenius_q(3);
        let fr = fr.truncate(fr.val().map(|x| x + rel).unwrap_or(fr.prec()));
        t = fr.sub(&s_pow.mul(&t));
        c = c.mul(&s_pow).neg();
        pivots.push(s_pow);
        println!("step {step}: t val={:?} prec={} | c val={:?} prec={}", t.val(), t.prec(), c.val(), c.prec());
    }
    match t.div(&c) {
        Ok(v) => println!("value: val={:?} prec={}", v.val(), v.prec()),
        Err(e) => println!("div err {e:?}"),
    }
}
