import { ApiClient } from "./api.js";
import { TesterView } from "./tester.js";
import { TrainerView } from "./trainer.js";

const SESSION_KEY = "digitbench-session";

async function resumeOrCreateSession(api: ApiClient): Promise<string> {
  const stored = localStorage.getItem(SESSION_KEY);
  if (stored) {
    try {
      await api.getSession(stored);
      return stored; // refetching state reproduces the display after reload
    } catch {
      localStorage.removeItem(SESSION_KEY);
    }
  }
  const created = await api.createSession();
  localStorage.setItem(SESSION_KEY, created.session_id);
  return created.session_id;
}

async function boot(): Promise<void> {
  const api = new ApiClient();
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");

  const sessionId = await resumeOrCreateSession(api);
  const trainer = new TrainerView(api, sessionId);
  const tester = new TesterView(api);

  const nav = document.createElement("nav");
  const trainerTab = document.createElement("button");
  trainerTab.textContent = "Trainer";
  const testerTab = document.createElement("button");
  testerTab.textContent = "Tester";
  const sessionInfo = document.createElement("span");
  sessionInfo.className = "session-info";
  sessionInfo.textContent = `session ${sessionId.slice(0, 8)}`;
  nav.append(trainerTab, testerTab, sessionInfo);

  const show = (view: "trainer" | "tester") => {
    trainer.element.style.display = view === "trainer" ? "" : "none";
    tester.element.style.display = view === "tester" ? "" : "none";
    trainerTab.classList.toggle("active", view === "trainer");
    testerTab.classList.toggle("active", view === "tester");
    if (view === "tester") void tester.refreshFiles();
  };
  trainerTab.addEventListener("click", () => show("trainer"));
  testerTab.addEventListener("click", () => show("tester"));

  root.append(nav, trainer.element, tester.element);
  show("trainer");
  await trainer.restore();
}

void boot();
