//! Canned instruction text shipped with every generated eyeballing instance.
//!
//! Each family carries two fixed strings: one phrased for a video generation
//! model (answer spoken in the phonetic alphabet and marked red) and one
//! phrased as a multiple-choice question for image models. These are part of
//! the dataset contract; do not edit casually.

use super::TaskFamily;

/// (video prompt, multiple-choice prompt) for a family.
pub fn prompt_pair(family: TaskFamily) -> (&'static str, &'static str) {
    use TaskFamily::*;
    match family {
        CircleCenter => (
            "Mark the center of the circle red. Speak out which option is the center using phonetic alphabet. In portrait, no zoom, no pan.",
            "Which option is the center of the circle? Answer an option in A-E.",
        ),
        Circumcenter => (
            "Mark the circumcenter of the triangle red. Speak out which option is the circumcenter using phonetic alphabet. In portrait, no zoom, no pan.",
            "Which option is the circumcenter of the triangle? Answer an option in A-E.",
        ),
        FermatPoint => (
            "Find the Fermat point of the triangle. Mark the point red. Speak out which option is the Fermat point using the phonetic alphabet. In portrait, no zoom, no pan.",
            "Which option is the Fermat point of the triangle? Answer an option in A-E.",
        ),
        Incenter => (
            "Mark the incenter of the triangle red. Speak out which option is the incenter using phonetic alphabet. In portrait, no zoom, no pan.",
            "Which option is the incenter of the triangle? Answer an option in A-E.",
        ),
        Midpoint => (
            "Connect the two large circles and mark the midpoint as red. Speak out which option is the midpoint using phonetics alphabet. In portrait, no zoom, no pan.",
            "Which option is the midpoint of the two circles? Answer an option in A-E.",
        ),
        Orthocenter => (
            "Find the orthocenter (intersection of altitudes) of the triangle and mark it red. Speak out which option is the orthocenter using phonetic alphabet. In portrait, no zoom, no pan.",
            "Which option is the orthocenter of the triangle? Answer an option in A-E.",
        ),
        PointReflection => (
            "Reflect the small circle across the line. Mark the reflection red and speak out which option is the reflected point using phonetic alphabet. In portrait, no zoom, no pan.",
            "Which option is the reflection of the small circle across the line? Answer an option in A-E.",
        ),
        RayIntersection => (
            "Extend the three black lines and mark the intersection point as red. Speak out which option is the intersection point using phonetics alphabet. In portrait, no zoom, no pan.",
            "Which option is the intersection point of the three lines? Answer an option in A-E.",
        ),
        TriangleCenter => (
            "Mark the center of the triangle red. Speak out which option is the center using phonetic alphabet. In portrait, no zoom, no pan.",
            "Which option is the center of the triangle? Answer an option in A-E.",
        ),
        AngleBisector => (
            "Draw a black line bisecting the angle. Speak out which option is on the bisector using phonetic alphabet and mark that red. In portrait, no zoom, no pan.",
            "Which option is on the bisector of the angle? Answer an option in A-E.",
        ),
        ArcConnect => (
            "One arc on the left continues across the masked band to one of the arcs on the right. Which labeled arc matches? Remove the masked band quickly while keeping the arcs still. Speak out the answer in phonetic alphabet. In portrait. Static Camera. No zoom.",
            "One arc on the left continues across the masked band to one of the arcs on the right. Which labeled arc matches? Answer an option in A-E.",
        ),
        CircleTangentLine => (
            "Draw a black line tangent to the circle at the highlighted point. Speak out which option lies on this tangent line in phonetic alphabet and mark that red. In portrait, no zoom, no pan.",
            "Which option lies on the line that is tangent to the circle at the highlighted point? Answer an option in A-E.",
        ),
        CircleTangentPoint => (
            "Draw the tangent line from the external point to the circle in black. Paint the point of tangency red. Speak out which option is the point using phonetic alphabet. In portrait, no zoom, no pan.",
            "Which option is the tangent point on the circle from the external point? Answer an option in A-E.",
        ),
        Parallel => (
            "Draw a black line through the small circle and parallel to the existing line. Speak out which option is on the new line using phonetic alphabet and mark that red. In portrait, no zoom, no pan.",
            "Draw a line through the small circle and parallel to the existing line, which option is on it? Answer an option in A-E.",
        ),
        // The multiple-choice wording for Perpendicular is shipped exactly as
        // published upstream, including its mismatch with the drawing task.
        Perpendicular => (
            "Draw a black line perpendicular to the existing line and passing the small circle. Speak out which option is on the line using phonetic alphabet and mark that red. In portrait, no zoom, no pan.",
            "Which option is the center of the triangle? Answer an option in A-E.",
        ),
        PerpendicularBisector => (
            "Draw a black line that is the perpendicular bisector of the segment between the two small circles. Speak out which option is on the line using phonetic alphabet and mark that red. In portrait, no zoom, no pan.",
            "Which option is on the perpendicular bisector of the segment connecting the two small circles? Answer an option in A-E.",
        ),
        RayReflection => (
            "Draw the ray of light starting from the small circle and reflecting off the line in black. Speak out which option the reflected ray will pass through using phonetic alphabet and mark it red. In portrait, no zoom, no pan.",
            "A ray of light starts from the small circle and reflects off the line. Which option will the reflected ray pass through? Answer an option in A-E.",
        ),
        IsoscelesTrapezoid => (
            "Find the fourth vertex that completes the isosceles trapezoid. Mark the fourth vertex red. Speak out which option is the fourth vertex using phonetic alphabet. In portrait, no zoom, no pan.",
            "Which option is the fourth vertex of the isosceles trapezoid? Answer an option in A-E.",
        ),
        Parallelogram => (
            "Draw a black parallelogram with two sides given. Mark the fourth vertex red. Speak out which option is the fourth vertex using phonetics alphabet. In portrait, no zoom, no pan.",
            "Which option is the fourth vertex of the parallelogram with two sides given? Answer an option in A-E.",
        ),
        RightTriangle => (
            "Out of the 5 points, 3 form a right-angled triangle. Mark the vertex with the right angle in red. Speak out which option is the right-angle vertex using phonetic alphabet. In portrait, no zoom, no pan.",
            "Which option is the vertex of the right angle, given that exactly three of the five options form a right-angled triangle? Answer an option in A-E.",
        ),
        SquareOutlier => (
            "Four of the five options form a square. Mark the fifth point red. Speak out which option is the fifth point using phonetics alphabet. In portrait, no zoom, no pan.",
            "Four of the five options form a square. Which option is the fifth point? Answer an option in A-E.",
        ),
    }
}
