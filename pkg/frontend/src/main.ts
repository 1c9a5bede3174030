import { httpTransport } from "./api.js";
import { Session } from "./session.js";
import { renderAll, type ViewElements } from "./view.js";
import type { Face } from "./types.js";

const SERVICE_URL = "http://127.0.0.1:8337";

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el;
}

async function boot() {
  const transport = httpTransport(SERVICE_URL);
  const ui: ViewElements = {
    editor: $("editor") as HTMLTextAreaElement,
    gutter: $("gutter"),
    band: $("band"),
    twist: $("twist"),
    banner: $("banner"),
    tooltip: $("tooltip"),
    faceButtons: document.querySelectorAll<HTMLButtonElement>("[data-face]"),
    exampleBadge: $("example-badge"),
  };

  const session = new Session(transport, (state) => renderAll(ui, state, session));

  ui.editor.addEventListener("input", () => session.onEdit(ui.editor.value));
  ui.faceButtons.forEach((b) =>
    b.addEventListener("click", () => session.setFace(b.dataset.face as Face)),
  );

  const picker = $("examples") as HTMLSelectElement;
  try {
    for (const e of await transport.examples()) {
      const opt = document.createElement("option");
      opt.value = e.id;
      opt.textContent = e.title;
      picker.appendChild(opt);
    }
  } catch {
    session.state.banner = `catalog unreachable at ${SERVICE_URL} (is \`tabletloom serve\` running?)`;
  }
  picker.addEventListener("change", async () => {
    if (!picker.value) return;
    await session.loadExample(picker.value);
    ui.editor.value = session.state.source;
  });

  renderAll(ui, session.state, session);
}

boot();
