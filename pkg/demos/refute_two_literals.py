"""Walk one two-literal formula through every stage of the decision
procedure and print the refutation it produces."""

from nnfcalc import decide_psi, verify_certificate
from nnfcalc.calculus import certificate_to_text
from nnfcalc.syntax import parse, to_text

psi = parse("A x1 E y1 (A x3 F(y1,x1,x3) & A x2 ~F(x2,y1,y1))")
decision = decide_psi(psi)
stages = decision.stages

print("input            ", to_text(stages.psi))
print("scopes minimized ", to_text(stages.psi1))
print("multiplied       ", to_text(stages.psi2))
print("substitutions    ", stages.sigma)
for form in stages.prenexes:
    mark = "*" if form in stages.optimal else " "
    print(f"prenex {mark}         ", to_text(form.formula))
print("verdict          ", decision.verdict.value)
print()
print(certificate_to_text(decision.certificate), end="")
print("checker says     ", verify_certificate(decision.certificate))

# Swapping which variable depends on which turns the refutation into a
# satisfiable formula: there is no prenex form that allows the needed
# substitutions.
other = decide_psi(parse("A x1 E y1 F(x1,y1) & A x2 ~F(x2,x2)"))
print()
print("A x1 E y1 F(x1,y1) & A x2 ~F(x2,x2) is", other.verdict.value, "-", other.witness)
