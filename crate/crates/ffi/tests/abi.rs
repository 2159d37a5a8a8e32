use std::ffi::CStr;
use std::ptr;

use hermitian_ffi::*;

fn surface(t: u32) -> *mut HqSurface {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { hq_surface_new(t, &mut s) }, HqStatus::Ok);
    assert!(!s.is_null());
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(hq_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn counts() {
    for (t, points, generators) in [(2, 45, 27), (3, 280, 112)] {
        let s = surface(t);
        let mut n = 0;
        unsafe {
            assert_eq!(hq_surface_point_count(s, &mut n), HqStatus::Ok);
            assert_eq!(n, points);
            assert_eq!(hq_surface_tangent_plane_count(s, &mut n), HqStatus::Ok);
            assert_eq!(n, points);
            assert_eq!(hq_surface_generator_count(s, &mut n), HqStatus::Ok);
            assert_eq!(n, generators);
            hq_surface_free(s);
        }
    }
}

#[test]
fn classify_forms() {
    let s = surface(2);
    let mut c = HqClassification::default();
    unsafe {
        // x0² is a non-tangent repeated plane.
        let x0sq = [1, 0, 0, 0, 0, 0, 0, 0, 0, 0];
        assert_eq!(hq_classify(s, x0sq.as_ptr(), &mut c), HqStatus::Ok);
        assert_eq!((c.type_id, c.rank, c.section_size, c.weight), (2, 1, 9, 36));
        assert_eq!(c.kind, HqKind::RepeatedPlane as u8);

        // x0x1 + x2x3 is hyperbolic.
        let hyp = [0, 1, 0, 0, 0, 0, 0, 0, 1, 0];
        assert_eq!(hq_classify(s, hyp.as_ptr(), &mut c), HqStatus::Ok);
        assert_eq!((c.kind, c.zero_set_size), (HqKind::Hyperbolic as u8, 25));
        assert!(c.generators[0] >= c.generators[1]);

        let mut w = 0;
        assert_eq!(hq_weight(s, hyp.as_ptr(), &mut w), HqStatus::Ok);
        assert_eq!(w, u64::from(c.weight));
        hq_surface_free(s);
    }
}

#[test]
fn errors_are_reported() {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(hq_surface_new(7, &mut s), HqStatus::Unsupported);
        assert!(s.is_null());
        assert!(!last_error().is_empty());

        let s = surface(2);
        let mut c = HqClassification::default();
        let zero = [0u8; 10];
        assert_eq!(hq_classify(s, zero.as_ptr(), &mut c), HqStatus::ZeroForm);
        let big = [4u8, 0, 0, 0, 0, 0, 0, 0, 0, 0];
        assert_eq!(hq_classify(s, big.as_ptr(), &mut c), HqStatus::InvalidArgument);
        assert!(last_error().contains("GF(4)"));
        assert_eq!(hq_classify(s, ptr::null(), &mut c), HqStatus::NullPointer);
        assert_eq!(hq_classify(ptr::null(), zero.as_ptr(), &mut c), HqStatus::NullPointer);

        let mut n = 0;
        assert_eq!(hq_surface_point_count(s, &mut n), HqStatus::Ok);
        assert!(last_error().is_empty());
        hq_surface_free(s);
        hq_surface_free(ptr::null_mut());
    }
}

#[test]
fn formulas() {
    let mut b = HqBounds::default();
    let mut f = HqCountFormulas::default();
    unsafe {
        assert_eq!(hq_bounds(2, &mut b), HqStatus::Ok);
        assert_eq!(b.sections, [23, 21, 19, 17, 15]);
        assert_eq!(b.weights, [22, 24, 26, 28, 30]);
        assert_eq!(hq_count_formulas(3, &mut f), HqStatus::Ok);
        assert_eq!((f.second_count, f.third_count), (252000, 1088640));
        assert_eq!(hq_bounds(1, &mut b), HqStatus::InvalidArgument);
    }
}

#[test]
fn weight_distribution_buffer() {
    let s = surface(2);
    let mut len = 0;
    unsafe {
        assert_eq!(hq_weight_distribution(s, 4, ptr::null_mut(), 0, &mut len), HqStatus::BufferTooSmall);
        let mut buf = vec![HqWeightCount::default(); len];
        assert_eq!(hq_weight_distribution(s, 4, buf.as_mut_ptr(), buf.len(), &mut len), HqStatus::Ok);
        assert_eq!(buf.iter().map(|w| w.codewords).sum::<u64>(), 4u64.pow(10) - 1);
        let w24 = buf.iter().find(|w| w.weight == 24).unwrap();
        assert_eq!(w24.codewords, 2970);
        assert!(buf.windows(2).all(|p| p[0].weight < p[1].weight));

        let s3 = surface(3);
        assert_eq!(hq_weight_distribution(s3, 1, ptr::null_mut(), 0, &mut len), HqStatus::InvalidArgument);
        hq_surface_free(s3);
        hq_surface_free(s);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/hermitian.h");
    let src = std::env::temp_dir().join(format!("hermitian_header_{}.c", std::process::id()));
    std::fs::write(&src, format!("#include \"{header}\"\nint main(void) {{ return HQ_STATUS_OK; }}\n")).unwrap();
    let Ok(status) = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"])
        .arg(&src)
        .status()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    let _ = std::fs::remove_file(&src);
    assert!(status.success());
}
