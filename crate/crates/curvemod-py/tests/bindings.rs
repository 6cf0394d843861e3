use pyo3::prelude::*;
use pyo3::types::PyModule;

fn with_module<R>(f: impl FnOnce(&Bound<'_, PyModule>) -> PyResult<R>) -> R {
    Python::attach(|py| {
        let m = PyModule::new(py, "curvemod_py")?;
        curvemod_py::curvemod_py(&m)?;
        f(&m)
    })
    .unwrap()
}

#[test]
fn form_methods() {
    with_module(|m| {
        let f = m.getattr("Form")?.call1(("x^3+y^3+z^3",))?;
        assert_eq!(f.getattr("degree")?.extract::<u32>()?, 3);
        assert_eq!(f.str()?.to_string(), "x^3 + y^3 + z^3");
        let flexes: Vec<(u32, [(f64, f64); 3])> = f.call_method0("flexes")?.extract()?;
        assert_eq!(flexes.iter().map(|p| p.0).sum::<u32>(), 9);
        assert!(f.call_method0("is_smooth")?.extract::<bool>()?);
        assert_eq!(f.call_method0("geometric_genus")?.extract::<u64>()?, 1);
        let (_, _, range): (String, String, Option<(String, String)>) = f.call_method0("properness")?.extract()?;
        assert_eq!(range, Some(("1/9".into(), "2/3".into())));
        let t = m.getattr("Form")?.call1(("x*y*z",))?;
        assert_eq!(t.call_method0("lie_dim")?.extract::<usize>()?, 2);
        assert_eq!(t.call_method0("curve_type")?.extract::<Option<String>>()?, Some("D(2,1,1)".into()));
        let cusp = m.getattr("Form")?.call1(("y^2*z - x^3",))?;
        let s: Vec<(String, u64, u32, u64, u64, u64)> = cusp.call_method0("singularities")?.extract()?;
        assert_eq!((s[0].1, s[0].2, s[0].3), (2, 2, 1));
        Ok(())
    })
}

#[test]
fn divisor_and_functions() {
    with_module(|m| {
        let d = m.getattr("Divisor")?.call1(("<-1>+<0>+<1>+<inf>",))?;
        assert_eq!(d.call_method0("j")?.extract::<String>()?, "1");
        let (tag, order, _): (String, u32, String) = d.call_method0("classify")?.extract()?;
        assert_eq!((tag.as_str(), order), ("Dihedral", 8));
        assert_eq!(m.getattr("cross_ratio")?.call1(("0", "1", "inf", "2"))?.extract::<String>()?, "-1");
        assert_eq!(m.getattr("orbit")?.call1(("-1",))?.extract::<Vec<String>>()?.len(), 3);
        assert_eq!(m.getattr("weierstrass_j")?.call1(("1", "0"))?.extract::<String>()?, "1");
        assert_eq!(m.getattr("harnack_bound")?.call1((6,))?.extract::<u64>()?, 11);
        assert!(m.getattr("period_p_exists")?.call1((4, 3))?.extract::<bool>()?);
        let (_, _, smooth, inv): (Bound<'_, PyAny>, String, bool, bool) = m.getattr("witness_curve")?.call1((5, 5))?.extract()?;
        assert!(smooth && inv);
        let sv: Vec<f64> = m.getattr("singular_values")?.call1((vec![2.0, 0.0, 0.0, 1.0],))?.extract()?;
        assert!((sv[0] - 2.0).abs() < 1e-12);
        let (code, out, _): (i32, String, String) = m.getattr("run")?.call1((vec!["divisor", "j", "<0>+<1>+<2>+<inf>"],))?.extract()?;
        assert_eq!(code, 0);
        assert!(out.contains("\"schema\": 1"));
        Ok(())
    })
}

#[test]
fn errors_raise() {
    with_module(|m| {
        let e = m.getattr("Form")?.call1(("x^3 + + y",)).unwrap_err();
        Python::attach(|py| assert!(e.is_instance(py, &m.getattr("CurvemodError").unwrap())));
        let lines = m.getattr("Form")?.call1(("x^3+y^3",))?;
        assert!(lines.call_method0("flexes").is_err());
        Ok(())
    })
}
